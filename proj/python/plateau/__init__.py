"""Exact value-distribution, Walsh and differential analysis of functions F_p^n -> F_p^m."""

from ._core import (
    BudgetExceeded,
    FuncTable,
    HypothesisError,
    InternalError,
    ParseError,
    analyze,
    check_construction,
    check_theorem,
    classify_almost_balanced,
    component_profile,
    construct,
    ddt,
    diff_summary,
    dto1_check,
    emit_text,
    find_balancing_shift,
    fourth_moment,
    image_lower_bound,
    image_size,
    imbalance,
    parse_function,
    preimage_histogram,
    random_function,
    read_function,
    set_threads,
    surjectivity_certificate,
    walsh_point,
    walsh_row,
    write_function,
    xi_defect,
    zero_column,
)

__all__ = [name for name in dir() if not name.startswith("_")]
