//! Operation coverage registry: every library operation is reachable from at
//! least one subcommand.  The table is the contract a coverage test enforces.

/// `(operation, subcommand path that reaches it)`
pub const OPERATIONS: &[(&str, &str)] = &[
    ("poly_from_roots", "utransform inverse"),
    ("roots", "utransform forward"),
    ("signed_coeff", "conv add"),
    ("power_sums_from_coeffs", "utransform moments"),
    ("char_poly", "mc verify"),
    ("series_arithmetic", "rtransform"),
    ("series_revert", "study r-convergence"),
    ("voiculescu_r_series", "study r-convergence"),
    ("voiculescu_s_values", "stransform --voiculescu"),
    ("u_transform", "utransform forward"),
    ("u_inverse", "utransform inverse"),
    ("u_moments", "utransform moments"),
    ("additive_convolve", "conv add"),
    ("multiplicative_convolve", "conv mult"),
    ("operator_of_apply", "conv inverse"),
    ("additive_inverse", "conv inverse"),
    ("finite_r_transform", "rtransform"),
    ("finite_k_transform", "rtransform"),
    ("quadrature_k_check", "check quadrature-k"),
    ("r_additivity_check", "check r-add"),
    ("s_moment_values", "stransform"),
    ("s_multiplicativity_check", "check s-mult"),
    ("quadrature_n_check", "check quadrature-n"),
    ("identity_s_reference", "stransform --identity-ref"),
    ("r_convergence_study", "study r-convergence"),
    ("haar_orthogonal", "mc verify"),
    ("mc_expected_charpoly", "mc verify"),
    ("mixed_discriminant", "md eval"),
    ("md_pattern", "md eval --i --j"),
    ("check_free_position", "freepos check"),
    ("check_mult_identity", "freepos check"),
    ("search_free_rotation", "freepos search"),
    ("zero_diagonal_normalize", "freepos normalize"),
    ("additive_compound", "compound"),
    ("majorizes", "majorize check"),
    ("majorization_flow", "majorize flow"),
    ("trace_distributivity_check", "check trace-dist"),
    ("binomial_identity_check", "check binomial"),
    ("projection_identity_check", "check projection"),
    ("finite_gaussian", "dist hermite"),
    ("laguerre_finite_poisson", "dist poisson"),
    ("finite_compound_poisson", "dist compound"),
    ("lln_run", "limit lln"),
    ("clt_run", "limit clt"),
    ("poisson_limit_exact", "limit poisson"),
    ("mp_support_check", "dist poisson --mp-report"),
    ("restricted_invertibility_demo", "ri demo"),
];
