"""Field arithmetic of On_p below [w^w^w]."""
