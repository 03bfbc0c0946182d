"""Structure theory: chi_r, Q(h), f(u) and the alpha_u solver."""
