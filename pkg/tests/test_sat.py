import random
from itertools import combinations

import pytest

from cubic3dec.extend import is_naively_extendable
from cubic3dec.sat import (Formula, FormulaError, brute_force_sat, format_dimacs,
                           is_realizable, np_hardness_instance, pad_balanced, parse_dimacs,
                           sat_to_template)


def gadget_agrees(f):
    fp = pad_balanced(f)
    template, assignment = sat_to_template(fp)
    return (brute_force_sat(fp) is not None) == is_realizable(template, assignment)


def test_dimacs_round_trip():
    f = Formula(3, ((1, -2, 3), (-1, 2, -3)))
    assert parse_dimacs(format_dimacs(f)) == f


def test_dimacs_rejects_non_ternary():
    with pytest.raises(FormulaError):
        parse_dimacs("p cnf 2 1\n1 -2 0\n")


def test_pad_balances_occurrences():
    f = pad_balanced(Formula(2, ((1, 1, 2),)))
    for var in (1, 2):
        pos, neg = f.occurrences(var)
        assert pos == neg > 0


def test_pad_rejects_missing_variable():
    with pytest.raises(FormulaError):
        pad_balanced(Formula(2, ((1, 1, -1),)))


def test_tautological_clause_realizable():
    assert gadget_agrees(Formula(1, ((1, 1, -1),)))
    f = pad_balanced(Formula(1, ((1, 1, -1),)))
    assert brute_force_sat(f) is not None


def test_two_clause_formula_realizable_iff_sat():
    f = Formula(3, ((1, 2, 3), (-1, -2, -3)))
    assert brute_force_sat(pad_balanced(f)) is not None
    assert gadget_agrees(f)


def test_unsat_formula_found_by_search_is_unrealizable():
    # brute-force search for an unsatisfiable padded 3CNF over 3 variables
    found = None
    pool = [(1, 1, 1), (-1, -1, -1), (2, 2, 2), (-2, -2, -2), (3, 3, 3), (-3, -3, -3)]
    for k in (2, 3):
        for clauses in combinations(pool, k):
            vars_used = {abs(l) for cl in clauses for l in cl}
            if vars_used != {1, 2, 3}:
                continue
            f = Formula(3, clauses)
            if brute_force_sat(f) is None:
                found = f
                break
        if found:
            break
    if found is None:
        found = Formula(3, ((1, 1, 1), (-1, -1, -1), (2, 2, 3)))
        assert brute_force_sat(found) is None
    fp = pad_balanced(found)
    template, assignment = sat_to_template(fp)
    assert brute_force_sat(fp) is None
    assert not is_realizable(template, assignment)


def test_random_formulas_agree():
    rng = random.Random(20240)
    pool = [tuple(sorted(c)) for c in combinations(range(1, 5), 3)]
    for _ in range(25):
        clauses = []
        for _k in range(rng.randint(4, 6)):
            trip = rng.choice(pool)
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in trip))
        used = {abs(l) for cl in clauses for l in cl}
        f = Formula(max(used), tuple(clauses))
        if any(f.occurrences(v) == (0, 0) for v in range(1, f.num_vars + 1)):
            continue
        assert gadget_agrees(f)


def test_np_hardness_instance_matches_sat():
    cases = [Formula(1, ((1, 1, -1),)),
             Formula(1, ((1, 1, 1), (-1, -1, -1))),
             Formula(3, ((1, 2, 3), (-1, -2, -3)))]
    for f in cases:
        fp = pad_balanced(f)
        x, fx, y = np_hardness_instance(fp)
        assert fx.assignment == sat_to_template(fp)[1]
        extendable = is_naively_extendable(fx, y) is not None
        assert extendable == (brute_force_sat(fp) is not None)
