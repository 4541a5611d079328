import pytest

from quarticgenus.cli import valid_cases
from quarticgenus.field_model import build_field
from quarticgenus.hilbert import (
    EPS_ABSENT_IN_PARALLEL,
    EPS_ONLY_IN_STATEMENT,
    HILBERT_TABLE,
    hilbert_genus_field,
    rank,
)
from quarticgenus.verify import independence_mod_squares, is_unramified_generator

# one witness per table row; a needs three primes for the rows whose
# split primes are all 1 mod 4 while a is 1 mod 4 with primes 3 mod 4
ROW_WITNESSES = {
    ("p1mod8_a_odd", "all-1mod4/m=0"): (17, 1),
    ("p1mod8_a_odd", "all-1mod4/symbols-equal"): (17, 53),
    ("p1mod8_a_odd", "all-1mod4/symbols-differ"): (17, 13),
    ("p1mod8_a_odd", "a=1mod4/m=0"): (17, 21),
    ("p1mod8_a_odd", "a=1mod4/split-1mod4/alpha+1"): (17, 1113),
    ("p1mod8_a_odd", "a=1mod4/split-1mod4/alpha-1"): (17, 273),
    ("p1mod8_a_odd", "a=1mod4/split-3mod4/alpha+1"): (17, 129),
    ("p1mod8_a_odd", "a=1mod4/split-3mod4/alpha-1"): (17, 57),
    ("p1mod8_a_odd", "a=3mod4/m=0"): (17, 3),
    ("p1mod8_a_odd", "a=3mod4/alpha+1"): (17, 43),
    ("p1mod8_a_odd", "a=3mod4/alpha-1"): (17, 19),
    ("p1mod8_a_even", "all-1mod4/m=0/two-equal"): (41, 2),
    ("p1mod8_a_even", "all-1mod4/m=0/two-differ"): (17, 2),
    ("p1mod8_a_even", "all-1mod4/symbols-equal/two-equal"): (41, 122),
    ("p1mod8_a_even", "all-1mod4/symbols-equal/two-differ"): (17, 106),
    ("p1mod8_a_even", "all-1mod4/symbols-differ"): (17, 26),
    ("p1mod8_a_even", "a=1mod4/m=0"): (17, 42),
    ("p1mod8_a_even", "a=1mod4/split-1mod4/alpha+1"): (17, 2226),
    ("p1mod8_a_even", "a=1mod4/split-1mod4/alpha-1"): (17, 546),
    ("p1mod8_a_even", "a=1mod4/split-3mod4/alpha+1"): (17, 258),
    ("p1mod8_a_even", "a=1mod4/split-3mod4/alpha-1"): (17, 114),
    ("p1mod8_a_even", "a=3mod4/m=0"): (17, 6),
    ("p1mod8_a_even", "a=3mod4/alpha+1"): (17, 86),
    ("p1mod8_a_even", "a=3mod4/alpha-1"): (17, 38),
    ("p5mod8_a_odd", "all-1mod4/m=0"): (5, 1),
    ("p5mod8_a_odd", "all-1mod4/symbols-equal"): (5, 29),
    ("p5mod8_a_odd", "all-1mod4/symbols-differ"): (5, 41),
    ("p5mod8_a_odd", "a=1mod4/m=0"): (5, 21),
    ("p5mod8_a_odd", "a=1mod4/split-1mod4/alpha+1"): (5, 609),
    ("p5mod8_a_odd", "a=1mod4/split-1mod4/alpha-1"): (5, 861),
    ("p5mod8_a_odd", "a=1mod4/split-3mod4/alpha+1"): (5, 177),
    ("p5mod8_a_odd", "a=1mod4/split-3mod4/alpha-1"): (5, 33),
    ("p5mod8_a_odd", "a=3mod4/m=0"): (5, 3),
    ("p5mod8_a_odd", "a=3mod4/split-1mod4/alpha+1"): (5, 87),
    ("p5mod8_a_odd", "a=3mod4/split-1mod4/alpha-1"): (5, 123),
    ("p5mod8_a_odd", "a=3mod4/split-3mod4/alpha+1"): (5, 59),
    ("p5mod8_a_odd", "a=3mod4/split-3mod4/alpha-1"): (5, 11),
    ("p5mod8_a_even", "all-1mod4/m=0"): (5, 2),
    ("p5mod8_a_even", "all-1mod4/symbols-equal"): (5, 58),
    ("p5mod8_a_even", "all-1mod4/symbols-differ"): (5, 82),
    ("p5mod8_a_even", "a=1mod4/m=0"): (5, 42),
    ("p5mod8_a_even", "a=1mod4/split-1mod4/alpha+1"): (5, 1218),
    ("p5mod8_a_even", "a=1mod4/split-1mod4/alpha-1"): (5, 1722),
    ("p5mod8_a_even", "a=1mod4/split-3mod4/alpha+1"): (5, 354),
    ("p5mod8_a_even", "a=1mod4/split-3mod4/alpha-1"): (5, 66),
    ("p5mod8_a_even", "a=3mod4/m=0"): (5, 6),
    ("p5mod8_a_even", "a=3mod4/split-1mod4/alpha+1"): (5, 174),
    ("p5mod8_a_even", "a=3mod4/split-1mod4/alpha-1"): (5, 246),
    ("p5mod8_a_even", "a=3mod4/split-3mod4/alpha+1"): (5, 118),
    ("p5mod8_a_even", "a=3mod4/split-3mod4/alpha-1"): (5, 22),
    ("p2", "all-1mod4/m=0"): (2, 1),
    ("p2", "all-1mod4/symbols-equal"): (2, 41),
    ("p2", "all-1mod4/symbols-differ"): (2, 17),
    ("p2", "some-3mod4/m=0"): (2, 3),
    ("p2", "some-3mod4/split-1mod4/symbols-equal"): (2, 123),
    ("p2", "some-3mod4/split-1mod4/symbols-differ"): (2, 51),
    ("p2", "some-3mod4/split-3mod4"): (2, 7),
}


def test_witnesses_cover_every_row():
    rows = {(key, row.row_id) for key, table in HILBERT_TABLE.items() for row in table}
    assert rows == set(ROW_WITNESSES)


@pytest.mark.parametrize("key, row_id", sorted(ROW_WITNESSES))
def test_row_witness(key, row_id):
    p, a = ROW_WITNESSES[(key, row_id)]
    ctx = build_field(p, a)
    gens = hilbert_genus_field(ctx)
    assert (gens.trace.case, gens.trace.row) == (f"hilbert/{key}", row_id)
    assert independence_mod_squares(ctx, gens)
    assert all(is_unramified_generator(ctx, r) for r in gens.radicands)


def test_17_13():
    ctx = build_field(17, 13)
    gens = hilbert_genus_field(ctx)
    assert gens.labels(17) == ["sqrt(13)"] and rank(ctx) == 1
    assert gens.trace.conditions == (("all_q_1mod4", True), ("m_zero", False), ("sym_all_equal", False))
    assert gens.trace.chosen_pell == ((13, (9, 2)),)


def test_5_11():
    ctx = build_field(5, 11)
    gens = hilbert_genus_field(ctx)
    assert len(gens) == 0 and rank(ctx) == 0
    assert gens.trace.row == "a=3mod4/split-3mod4/alpha-1"


def test_2_7():
    ctx = build_field(2, 7)
    gens = hilbert_genus_field(ctx)
    assert len(gens) == 0 and rank(ctx) == 0
    assert gens.trace.case == "hilbert/p2" and gens.trace.row == "some-3mod4/split-3mod4"


def test_flags_attached():
    assert hilbert_genus_field(build_field(17, 43)).trace.flags == (EPS_ONLY_IN_STATEMENT,)
    assert hilbert_genus_field(build_field(17, 19)).trace.flags == (EPS_ONLY_IN_STATEMENT,)
    assert hilbert_genus_field(build_field(5, 41)).trace.flags == (EPS_ABSENT_IN_PARALLEL,)
    assert hilbert_genus_field(build_field(17, 3)).trace.flags == ()


def test_sweep_dispatches_everywhere():
    for p, a in valid_cases(61, 150):
        hilbert_genus_field(build_field(p, a))
