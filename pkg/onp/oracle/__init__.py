"""Independent oracles: tower construction, genetic mex arithmetic, verification suites."""
