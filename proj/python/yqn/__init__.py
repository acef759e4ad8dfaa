from ._yqn import (
    CheckResult,
    ParseError,
    RunConfig,
    Status,
    __version__,
    check_irreducible_principal,
    check_qybe,
    check_qybe_mutated,
    check_rtt_eval,
    functor_dimension,
    report_json,
    run,
    suite_checks,
    suite_names,
)
