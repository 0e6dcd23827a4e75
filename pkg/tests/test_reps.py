from __future__ import annotations

import numpy as np
import pytest

from qlie.cartan import RootPartition, root_system
from qlie.cocycle import all_orientations, reference_orientation
from qlie.errors import InputError, ResourceError
from qlie.reps import FqRep, RepCatalog, catalog, end_dim, ext_dim, extensions, hom_dim, orbit_census


@pytest.mark.parametrize("label", ["A2", "A3", "D4"])
@pytest.mark.parametrize("q", [2, 3])
def test_classification_is_complete(label, q):
    # sum over classes of |G_d|/|Aut X| must exhaust E_d
    o = reference_orientation(label)
    rs = root_system(label)
    for d in [rs.highest_root, tuple(1 for _ in rs.highest_root)]:
        total, size = orbit_census(o, d, q)
        assert total == size


def test_orbit_census_over_gf4():
    o = reference_orientation("A3")
    total, size = orbit_census(o, (1, 2, 1), 4)
    assert total == size


def test_indecomposables_are_bricks_and_rigid():
    cat = catalog(reference_orientation("D4"), 2)
    for r in cat.rs.positive_roots:
        x = cat.indecomposable(r)
        assert end_dim(x) == 1
        assert ext_dim(x, x) == 0


def test_euler_form_is_transposed_hom_minus_ext():
    # <a,b> = hom(b,a) - ext(b,a): the transpose of the textbook form
    o = all_orientations("A3")[1]
    cat = catalog(o, 3)
    for a in cat.rs.positive_roots:
        for b in cat.rs.positive_roots:
            x, y = cat.indecomposable(a), cat.indecomposable(b)
            assert hom_dim(y, x) - ext_dim(y, x) == o.euler_form(a, b)


def test_identify_recovers_labels():
    o = reference_orientation("A3")
    cat = catalog(o, 2)
    for lab, x in cat.enumerate((1, 1, 1)):
        assert cat.identify(x) == lab


def test_extensions_of_simples():
    o = reference_orientation("A2")
    cat = catalog(o, 3)
    s1, s2 = cat.indecomposable((1, 0)), cat.indecomposable((0, 1))
    labels = {cat.identify(m) for m in extensions(s1, s2)}
    assert RootPartition.of([(1, 1)]) in labels


def test_bounds_and_input_checks():
    o = reference_orientation("A2")
    with pytest.raises(ResourceError):
        RepCatalog(o, 128)
    with pytest.raises(InputError):
        FqRep.of_orientation(o, 2, (1, 1), [np.array([[2]])])
    with pytest.raises(InputError):
        RepCatalog(reference_orientation("A~1"), 2)
