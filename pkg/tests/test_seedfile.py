import random
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mutpot.lattice import SkewForm
from mutpot.laurent import LaurentPoly
from mutpot.mutation import ExchangeCollection, Seed
from mutpot.seedfile import (
    SeedFormatError,
    load_seed,
    parse_seed,
    render_seed,
    save_seed,
)

from conftest import L, coll, omega

SEED_DIR = Path(__file__).resolve().parent.parent / "seeds"


SAMPLE = """\
# comment lines and blank lines are ignored

name = sample
rank = 2
form = k 2
vector = (0,1) x 2   # trailing comments too
vector = (1,0) x 1
potential = x1 + x2
"""


def test_parse_sample():
    seed = parse_seed(SAMPLE)
    assert seed.name == "sample"
    assert seed.form == omega(2)
    assert seed.collection == coll(((0, 1), 2), (1, 0))
    assert seed.potential.equals(L("x1 + x2"))


def test_parse_matrix_form():
    seed = parse_seed("rank = 2\nform = [[0, 3], [-3, 0]]\nvector = (1,1) x 1\n")
    assert seed.form == omega(3)


def test_render_is_canonical():
    seed = parse_seed(SAMPLE)
    text = render_seed(seed)
    # key order is fixed, vectors sorted, exactly one trailing newline
    lines = text.splitlines()
    assert lines[0] == "name = sample"
    assert lines.index("rank = 2") < lines.index("form = k 2")
    assert lines[-1].startswith("potential = ")
    assert text.endswith("\n") and not text.endswith("\n\n")
    vec_lines = [ln for ln in lines if ln.startswith("vector")]
    assert vec_lines == sorted(vec_lines)


def test_parse_render_roundtrip_on_sample():
    seed = parse_seed(SAMPLE)
    assert parse_seed(render_seed(seed)) == seed


@pytest.mark.parametrize("path", sorted(SEED_DIR.glob("*.seed")))
def test_bundled_seeds_roundtrip(path):
    text = path.read_text(encoding="utf-8")
    seed = parse_seed(text)
    assert render_seed(seed) == text


def test_save_load(tmp_path):
    seed = Seed(omega(1), coll((0, 1)), L("x1 + x2"), name="tmp")
    target = tmp_path / "t.seed"
    save_seed(seed, target)
    assert load_seed(target) == seed


def test_format_errors():
    with pytest.raises(SeedFormatError):
        parse_seed("rank = 2\nform = k 1\n")  # no vectors
    with pytest.raises(SeedFormatError):
        parse_seed("form = k 1\nvector = (0,1) x 1\n")  # no rank
    with pytest.raises(SeedFormatError):
        parse_seed("rank = 2\nform = k 1\nvector = (0,1) x 1\nbogus = 3\n")
    with pytest.raises(SeedFormatError):
        parse_seed("rank = 2\nform = nonsense\nvector = (0,1) x 1\n")
    with pytest.raises(SeedFormatError):
        parse_seed("rank = 2\nform = k 1\nvector = (0,1,2) x 1\n")
    with pytest.raises(SeedFormatError):
        parse_seed(
            "rank = 2\nform = k 1\nvector = (0,1) x 1\n"
            "potential = x1\npotential = x2\n"
        )
    with pytest.raises(SeedFormatError):
        parse_seed("rank = 2\nform = k 1\nvector = (0,1) x 1\npotential = x1 +\n")


def test_missing_potential_defaults_to_zero():
    seed = parse_seed("rank = 2\nform = k 1\nvector = (0,1) x 1\n")
    assert seed.potential.numerator.is_zero()


vectors = st.tuples(st.integers(-5, 5), st.integers(-5, 5)).filter(
    lambda v: v != (0, 0)
)
collections = st.dictionaries(vectors, st.integers(1, 3), min_size=1, max_size=4)
exponents = st.tuples(st.integers(-4, 4), st.integers(-4, 4))
potentials = st.dictionaries(
    exponents,
    st.fractions(min_value=-9, max_value=9, max_denominator=5).filter(bool),
    min_size=0,
    max_size=5,
)


@given(collections, potentials, st.integers(1, 4))
def test_roundtrip_random_documents(vecs, pot, k):
    seed = Seed(
        SkewForm.rank2(k),
        ExchangeCollection(2, vecs.items()),
        LaurentPoly(2, pot.items()),
        name="fuzz",
        comment="generated",
    )
    assert parse_seed(render_seed(seed)) == seed
