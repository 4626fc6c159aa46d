# -*- coding: utf-8 -*-
"""Library defaults."""

# truncation caps: regular columns, multiplicity levels, dust copies, horizon
max_regular_columns = 3
max_multiplicity = 3
max_dust = 2
max_horizon = 4

# per-index rejection budget
max_retries = 10**6

# tolerances
normalization_tolerance = 1.e-12
oracle_tolerance = 1.e-12
formula_tolerance = 1.e-9

# largest number of regular traits matched to columns by etpf_prob
max_regular_traits = 20

# Poisson draws by inversion below this rate
poisson_inversion_limit = 10.0

# invariant suites
check_horizon = 3
check_draws = 20000
significance = 1.e-3
max_total_variation = 0.02
total_variation_draws = 100000

seed = 1234
