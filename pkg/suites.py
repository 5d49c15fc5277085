"""
Verification suites
Cross-module checks run by `verify`: every numeric claim is reproduced
by at least two independent routes
"""

import os
from functools import lru_cache

import config
from caslattice import first_dimensions
from completion import buchberger_complete, replay_trace
from linear import (
    aas_generators, aas_presentation_check, as_generators, grassmann_check,
    nil2_generators, quotient_dims as linear_dims, random_generator_pairs,
    rc_generators,
)
from quotients import (
    CAS3_HILBERT, CUBIC_PAIR_HILBERT, MAG23_HILBERT, POWER_OF_TWO_PAIRS,
    TABLE_DIMENSIONS, absorbing_check, avoider_count, cas3_basis, cas3_system,
    cas_generators, cubic_generators, mag23_closed_form, mag34_rule_family,
    quotient_dims, taylor_coefficients,
)
from realizations import (
    REALIZATIONS, intertwining_failure, non_isomorphism_witnesses,
    operad_axiom_failure, random_axiom_failure, rc_compose, rc_generators_pairs,
    rc_hilbert, rc_projection, realized_pair,
)
from rewriting import (
    RewriteRule, RewriteSystem, certify_convergence, filtered_avoiders,
    normal_form_counts,
)
from storage import golden_path, load_json
from tables import first_mismatch
from trees import enumerate_trees, graft, left_comb, right_comb

SUITE_NAMES = ["cas3", "grassmann", "realizations", "mag34"]

# Golden reports `verify all` needs before running anything
REQUIRED_GOLDEN = [("dims", "cas3"), ("complete", "cas3")]

MAG23_DIMENSIONS = [1, 1, 2, 4, 8, 14, 21, 29, 38, 48]
CAS3_COMPLETION_COUNTS = [0, 0, 0, 1, 1, 2, 3, 4, 0, 0]

# Mirror classes of cubic pairs
MIRROR_CLASSES = [((1, 2), (4, 5)), ((1, 3), (3, 5)), ((1, 4), (2, 5)),
                  ((2, 4), (2, 4)), ((2, 3), (3, 4)), ((1, 5), (1, 5))]


@lru_cache(maxsize=None)
def _cubic_oracle(i, j, n_max):
    return quotient_dims(cubic_generators(i, j), n_max)


def _compare(table, expected, what, start=1):
    mismatch = first_mismatch(table, expected, start)
    if mismatch is None:
        return True, f"{what} match for n = {start}..{start + len(expected) - 1}"
    n, got, want = mismatch
    return False, f"{what}: arity {n} gives {got}, expected {want}"


# =============================================================================
# CAs(3)
# =============================================================================

def check_cas3_oracle():
    n_max = config.ORACLE_CHECK_ARITY
    table = quotient_dims(cas_generators(3), n_max)
    return _compare(table, TABLE_DIMENSIONS[3][:n_max], "oracle dimensions")


def check_cas3_normal_forms():
    table = normal_form_counts(cas3_system(), 14)
    return _compare(table, TABLE_DIMENSIONS[3][:14], "normal-form counts")


def check_cas3_series():
    table = taylor_coefficients(CAS3_HILBERT, 14)
    return _compare(table, TABLE_DIMENSIONS[3][:14], "Hilbert series coefficients")


def check_cas3_completion():
    trace = buchberger_complete(RewriteSystem([RewriteRule(left_comb(3), right_comb(3))], name="cas:3"))
    if not trace.completed:
        return False, f"completion stopped: {trace.reason}"
    if set(trace.final_rules.rules) != set(cas3_system().rules):
        return False, f"completion gives {len(trace.final_rules)} rules, not the 11-rule presentation"
    counts = trace.per_arity_counts.as_list(1, len(CAS3_COMPLETION_COUNTS))
    if counts != CAS3_COMPLETION_COUNTS:
        return False, f"per-arity rule counts {counts}"
    ok, message = replay_trace(trace)
    if not ok:
        return False, message
    return True, f"11 rules, per-arity {' '.join(map(str, counts))}; {message}"


def check_cas3_certificate():
    result = certify_convergence(cas3_system(), bound=13)
    if not result:
        data = result.to_dict()
        return False, f"branching pair at {data['tree']} does not join"
    checked = sum(result.checked_per_degree.values())
    return True, f"{checked} branching pairs of degree ≤ 13 join"


def check_cas3_stable_regime():
    n_max = config.STABLE_REGIME_MAX_ARITY
    table = avoider_count(cas3_system().lhs_trees, n_max)
    return _compare(table, [n + 3 for n in range(11, n_max + 1)], "avoider counts n + 3", start=11)


def check_cas3_basis():
    system = cas3_system()
    expected = set(cas3_basis(11))
    found = set(filtered_avoiders(system.lhs_trees, 11))
    if expected != found:
        return False, f"type A/B families differ from the {len(found)} normal forms of arity 11"
    return True, "type A and type B trees are the arity-11 normal forms"


def check_cas3_absorbing():
    return absorbing_check(config.ABSORBING_CHECK_ARITY)


def check_table_rows():
    n_max = config.TABLE_CHECK_ARITY
    for gamma in range(4, 10):
        table = quotient_dims(cas_generators(gamma), n_max)
        ok, message = _compare(table, TABLE_DIMENSIONS[gamma][:n_max], f"CAs({gamma})")
        if not ok:
            return False, message
        if first_dimensions(gamma)[:n_max] != table.as_list(1, min(gamma + 1, n_max)):
            return False, f"CAs({gamma}): first dimensions disagree with the oracle"
    return True, f"rows γ = 4..9 match for n ≤ {n_max}"


# =============================================================================
# Linear Quotients
# =============================================================================

def check_linear_examples():
    cases = [
        ("As", as_generators(), [1] * 6),
        ("AAs", aas_generators(), [1, 1, 1, 0, 0, 0]),
        ("2Nil", nil2_generators(), [1, 1, 0, 0]),
        ("KRC(3)", rc_generators(3), [1, 1, 2, 1, 1, 1]),
    ]
    for label, generators, expected in cases:
        got = linear_dims(generators, len(expected))
        if got != expected:
            return False, f"{label}: {got}, expected {expected}"
    return True, "As, AAs, 2Nil and KRC(3) dimensions match"


def check_grassmann_as_aas():
    n_max = config.LINEAR_CHECK_ARITY
    report = grassmann_check(as_generators(), aas_generators(), n_max)
    if not report.ok:
        return False, f"identity fails at arity {report.first_failure()['n']}"
    if report.meet_dims != linear_dims(nil2_generators(), n_max):
        return False, f"meet dims {report.meet_dims} differ from 2Nil"
    if report.join_dims != linear_dims(rc_generators(3), n_max):
        return False, f"join dims {report.join_dims} differ from KRC(3)"
    return True, f"meet = 2Nil, join = KRC(3) for n ≤ {n_max}"


def check_grassmann_random():
    pairs = random_generator_pairs()
    for index, (first, second) in enumerate(pairs):
        report = grassmann_check(first, second, 6)
        if not report.ok:
            return False, f"pair {index}: identity fails at arity {report.first_failure()['n']}"
    return True, f"{len(pairs)} seeded generator pairs satisfy the identity for n ≤ 6"


def check_aas_presentation():
    ok, details = aas_presentation_check(6)
    if not ok:
        bad = next(n for n, (a, b) in details.items() if a != b)
        return False, f"arity {bad}: {details[bad][0]} normal monomials, dimension {details[bad][1]}"
    return True, "normal monomials count the AAs dimensions for n ≤ 6"


# =============================================================================
# Realizations
# =============================================================================

def check_realized_pairs():
    for entry in REALIZATIONS:
        pair = realized_pair(entry.op)
        if pair != tuple(sorted(entry.pair)):
            return False, f"{entry.name} identifies {pair}, expected {entry.pair}"
    return True, "generator morphisms identify the tabulated cubic pairs"


def check_operad_axioms():
    bound = config.REALIZATION_CHECK_ARITY
    for entry in REALIZATIONS:
        failure = operad_axiom_failure(entry.op, bound)
        if failure:
            return False, f"{entry.name}: {failure}"
    return True, f"operad axioms hold exhaustively to total arity {bound}"


def check_operad_axioms_random():
    samples = config.RANDOM_AXIOM_SAMPLES
    for entry in REALIZATIONS:
        failure = random_axiom_failure(entry.op, samples, 12)
        if failure:
            return False, f"{entry.name}: {failure}"
    return True, f"{samples} random triples per operation"


def check_intertwining():
    bound = config.REALIZATION_CHECK_ARITY
    for entry in REALIZATIONS:
        failure = intertwining_failure(entry, bound)
        if failure:
            return False, failure
    return True, f"φ intertwines grafting and composition to total arity {bound}"


def check_single_rule_systems():
    n_max = 12
    expected = [1] + [2 ** (n - 2) for n in range(2, n_max + 1)]
    for entry in REALIZATIONS:
        system = entry.system()
        if not certify_convergence(system):
            return False, f"{entry.name}: {system.rules[0]} is not convergent"
        ok, message = _compare(normal_form_counts(system, n_max), expected, f"{entry.name} normal forms")
        if not ok:
            return False, message
    return True, f"single-rule systems convergent with 2^(n-2) normal forms for n ≤ {n_max}"


def check_cubic_oracle():
    n_max = config.ORACLE_CHECK_ARITY
    expected = taylor_coefficients(CUBIC_PAIR_HILBERT, n_max).as_list()
    for i, j in POWER_OF_TWO_PAIRS:
        ok, message = _compare(_cubic_oracle(i, j, n_max), expected, f"Mag^{{{i},{j}}}")
        if not ok:
            return False, message
    return True, f"seven cubic quotients have 2^(n-2) classes for n ≤ {n_max}"


def check_mirror_invariance():
    for first, second in MIRROR_CLASSES:
        a = _cubic_oracle(*first, 10).as_list()
        b = _cubic_oracle(*second, 10).as_list()
        if a != b:
            return False, f"Mag^{first} and Mag^{second} differ: {a} vs {b}"
    return True, "mirror pairs have equal dimensions for n ≤ 10"


def check_non_isomorphism():
    witnesses = non_isomorphism_witnesses()
    expected = sum(
        1
        for a in range(len(REALIZATIONS)) for b in range(a + 1, len(REALIZATIONS))
        if REALIZATIONS[a].pair != REALIZATIONS[b].pair
    )
    if len(witnesses) != expected:
        return False, f"{expected - len(witnesses)} pairs of operations agree on every triple"
    return True, f"{len(witnesses)} distinguishing triples found at arity ≤ 4"


def check_right_comb_operad():
    gamma = 3
    classes = quotient_dims(rc_generators_pairs(gamma), 8).as_list()
    if classes != rc_hilbert(gamma, 8):
        return False, f"RC({gamma}) class counts {classes}"
    for n in range(1, 5):
        for m in range(1, 7 - n):
            for t1 in enumerate_trees(n):
                for t2 in enumerate_trees(m):
                    for i in range(1, n + 1):
                        projected = rc_compose(gamma, rc_projection(gamma, t1), i, rc_projection(gamma, t2))
                        if projected != rc_projection(gamma, graft(t1, i, t2)):
                            return False, f"projection is not a morphism at {t1.word} ∘{i} {t2.word}"
    return True, f"RC({gamma}) class counts {' '.join(map(str, classes))}; projection is a morphism"


# =============================================================================
# Mag^{2,3} / Mag^{3,4}
# =============================================================================

def check_mag34_oracle():
    for pair in ((2, 3), (3, 4)):
        ok, message = _compare(_cubic_oracle(*pair, 10), MAG23_DIMENSIONS, f"Mag^{pair}")
        if not ok:
            return False, message
    return True, "Mag^{2,3} and Mag^{3,4} oracle dimensions match for n ≤ 10"


def check_mag34_closed_form():
    n_max = config.ORACLE_CHECK_ARITY
    table = _cubic_oracle(3, 4, n_max)
    expected = [mag23_closed_form(n) for n in range(5, n_max + 1)]
    return _compare(table, expected, "n(n+1)/2 - 7", start=5)


def check_mag34_series():
    return _compare(taylor_coefficients(MAG23_HILBERT, 10), MAG23_DIMENSIONS, "series coefficients")


def check_mag34_rule_family():
    n_max = config.ORACLE_CHECK_ARITY
    oracle = _cubic_oracle(3, 4, n_max).as_list()
    for side in ("2,3", "3,4"):
        counts = normal_form_counts(mag34_rule_family(n_max, side), n_max)
        ok, message = _compare(counts, oracle, f"rule family {side}")
        if not ok:
            return False, message
    return True, f"rule family normal forms match the oracle for n ≤ {n_max}"


SUITES = {
    "cas3": [
        ("oracle", check_cas3_oracle),
        ("normal forms", check_cas3_normal_forms),
        ("Hilbert series", check_cas3_series),
        ("completion", check_cas3_completion),
        ("convergence", check_cas3_certificate),
        ("stable regime", check_cas3_stable_regime),
        ("basis families", check_cas3_basis),
        ("absorbing", check_cas3_absorbing),
        ("CAs table", check_table_rows),
    ],
    "grassmann": [
        ("examples", check_linear_examples),
        ("As / AAs", check_grassmann_as_aas),
        ("random pairs", check_grassmann_random),
        ("AAs presentation", check_aas_presentation),
    ],
    "realizations": [
        ("realized pairs", check_realized_pairs),
        ("operad axioms", check_operad_axioms),
        ("random axioms", check_operad_axioms_random),
        ("intertwining", check_intertwining),
        ("single-rule systems", check_single_rule_systems),
        ("cubic oracle", check_cubic_oracle),
        ("mirror invariance", check_mirror_invariance),
        ("non-isomorphism", check_non_isomorphism),
        ("right-comb operad", check_right_comb_operad),
    ],
    "mag34": [
        ("oracle", check_mag34_oracle),
        ("closed form", check_mag34_closed_form),
        ("Hilbert series", check_mag34_series),
        ("rule family", check_mag34_rule_family),
    ],
}


# =============================================================================
# Runner
# =============================================================================

def check_fixtures(golden_dir=None):
    """
    Check that the golden reports exist and parse.

    Returns:
        (success, message)
    """
    for command, name in REQUIRED_GOLDEN:
        path = golden_path(command, name, golden_dir)
        if not os.path.exists(path):
            return False, f"missing golden fixture {path}"
        if not load_json(path):
            return False, f"golden fixture {path} is empty or corrupt"
    return True, f"{len(REQUIRED_GOLDEN)} golden fixtures present"


def run_suite(name, quiet=False, golden_dir=None):
    """
    Run a named suite, or every suite for "all".

    Returns:
        (success, results) with one {suite, check, ok, message} per check
    """
    if name == "all":
        ok, message = check_fixtures(golden_dir)
        if not quiet:
            print(f"{'✓' if ok else '✗'} fixtures: {message}")
        if not ok:
            return False, [{"suite": "all", "check": "fixtures", "ok": False, "message": message}]
        names = SUITE_NAMES
    elif name in SUITES:
        names = [name]
    else:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITE_NAMES + ['all'])}")

    results = []
    for suite in names:
        if not quiet:
            print(f"\n── {suite} ──")
        for label, check in SUITES[suite]:
            ok, message = check()
            results.append({"suite": suite, "check": label, "ok": ok, "message": message})
            if not quiet:
                print(f"  {'✓' if ok else '✗'} {label}: {message}")

    passed = sum(1 for result in results if result["ok"])
    success = passed == len(results)
    if not quiet:
        if success:
            print(f"\n✓ {passed}/{len(results)} checks passed")
        else:
            first = next(result for result in results if not result["ok"])
            print(f"\n✗ {passed}/{len(results)} checks passed; first failure: {first['suite']}/{first['check']}: {first['message']}")
    return success, results
