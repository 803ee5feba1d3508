from monomu.syntax.mu import (
    BOT,
    TOP,
    And,
    Atom,
    Bot,
    Box,
    Dia,
    GBox,
    GDia,
    Mu,
    MuFormula,
    NegAtom,
    Nu,
    Or,
    RankOrder,
    Top,
    binders,
    binding_definition,
    bound_vars,
    depth,
    fresh_name,
    free_vars,
    is_global_free,
    is_well_named,
    negate,
    parse_mu,
    print_mu,
    random_formula,
    rank_order,
    subformulas,
    substitute,
    well_name,
)
from monomu.syntax.nmso import NmsoFormula, desugar_nmso, parse_nmso, print_nmso

__all__ = [
    "BOT", "TOP", "And", "Atom", "Bot", "Box", "Dia", "GBox", "GDia", "Mu", "MuFormula",
    "NegAtom", "Nu", "Or", "RankOrder", "Top", "binders", "binding_definition", "bound_vars",
    "depth", "fresh_name", "free_vars", "is_global_free", "is_well_named", "negate",
    "parse_mu", "print_mu", "random_formula", "rank_order", "subformulas", "substitute",
    "well_name", "NmsoFormula", "desugar_nmso", "parse_nmso", "print_nmso",
]
