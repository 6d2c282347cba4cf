import json
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from rhodonea.nodes import build_index_set
from rhodonea.spectral import (
    chi,
    chi_matrix,
    chi_real,
    complex_norm_sq,
    discrete_integral,
    flip,
    gamma_omega,
    gamma_rect,
    gamma_triangle,
    gram_matrix,
    inner_product,
    random_omega,
    spectral_set,
    triangle_omega,
)

PAIRS_UP_TO_7 = list(product(range(1, 8), repeat=2))


def all_kinds(freq, seed=0):
    rng = np.random.default_rng(seed + 31 * freq[0] + freq[1])
    return [
        gamma_rect(freq),
        gamma_triangle(freq),
        gamma_omega(freq, random_omega(freq, rng, 0.3)),
        gamma_omega(freq, random_omega(freq, rng, 0.6)),
        gamma_omega(freq, random_omega(freq, rng, 1.0)),
    ]


def brute_force_norm(freq, basis_column):
    w = build_index_set(freq).weights
    return np.sum(w * np.abs(basis_column) ** 2)


class TestSets:
    def test_rect_small(self):
        assert gamma_rect((1, 1)).indices == [(0, 0), (1, 1), (2, 0)]
        assert len(gamma_rect((5, 3))) == 33

    def test_upsilon_examples(self):
        assert gamma_rect((5, 3)).real_split == [(g, 3) for g in (1, 3, 5, 7, 9)]
        assert gamma_triangle((5, 3)).real_split == [(5, 3)]
        assert gamma_triangle((2, 3)).real_split == []

    @pytest.mark.parametrize("freq", list(product(range(1, 12), repeat=2)))
    def test_cardinality_and_constraints(self, freq):
        m1, m2 = freq
        for s in all_kinds(freq):
            assert len(s) == (2 * m1 + 1) * m2
            assert len(set(s.indices)) == len(s)
            for a, b in s.indices:
                assert 0 <= a <= 2 * m1 and -2 * m2 < b <= 2 * m2 and (a + b) % 2 == 0

    @pytest.mark.parametrize("freq", PAIRS_UP_TO_7)
    def test_triangle_from_omega(self, freq):
        assert gamma_omega(freq, triangle_omega(freq)).indices == gamma_triangle(freq).indices

    def test_triangle_shape(self):
        m1, m2 = 5, 3
        tri = set(gamma_triangle((m1, m2)).indices)
        for a, b in tri:
            assert a * m2 + abs(b) * m1 <= 2 * m1 * m2

    def test_empty_omega_is_rect(self):
        assert gamma_omega((5, 3), []).indices == gamma_rect((5, 3)).indices

    def test_omega_example(self):
        assert gamma_omega((1, 1), [(0, 0)]).indices == [(1, 1), (2, 0), (2, 2)]

    def test_omega_must_be_subset(self):
        with pytest.raises(ValueError):
            gamma_omega((5, 3), [(0, 6)])

    def test_kind_aliases(self):
        assert spectral_set((3, 2), "rect") is gamma_rect((3, 2))
        assert spectral_set((3, 2), "triangle") is gamma_triangle((3, 2))
        with pytest.raises(ValueError):
            spectral_set((3, 2), "hexagon")

    def test_json(self):
        d = json.loads(gamma_rect((1, 1)).to_json())
        assert d == {
            "kind": "rectangular",
            "m1": 1,
            "m2": 1,
            "indices": [[0, 0], [1, 1], [2, 0]],
            "upsilon": [[1, 1]],
        }
        assert "omega" in gamma_omega((1, 1), [(0, 0)]).to_dict()


class TestFlip:
    def test_examples(self):
        assert flip((5, 3), (0, 0)) == (10, 6)
        assert flip((5, 3), (10, 6)) == (0, 0)

    @pytest.mark.parametrize("freq", PAIRS_UP_TO_7)
    def test_involution_and_glide_invariance(self, freq):
        m1, m2 = freq
        nodes = build_index_set(freq)
        for a in range(2 * m1 + 1):
            for b in range(-2 * m2 + 1, 2 * m2 + 1):
                if (a + b) % 2:
                    continue
                assert flip(freq, flip(freq, (a, b))) == (a, b)
                for i in nodes.indices:
                    assert chi(freq, flip(freq, (a, b)), i) == pytest.approx(chi(freq, (a, b), i), abs=1e-12)

    def test_rejects_outside_k(self):
        with pytest.raises(ValueError):
            flip((2, 2), (5, 0))


class TestBasis:
    def test_examples(self):
        assert chi((2, 3), (0, 0), (1, 1)) == 1
        assert abs(chi((2, 3), (2, 0), (1, 1))) < 1e-15
        s = gamma_rect((3, 2))
        for i in build_index_set((3, 2)).indices:
            assert chi_real(s, (0, 0), i) == 1

    def test_real_sine_case(self):
        s = gamma_rect((5, 3))
        gamma = (2, -2)
        assert not s.upsilon[s.position(gamma)]
        i = (1, 3)
        expected = np.cos(2 * np.pi / 10) * np.sin(-2 * 3 * np.pi / 6)
        assert chi_real(s, gamma, i) == pytest.approx(expected)

    def test_chi_real_rejects_foreign_gamma(self):
        with pytest.raises(ValueError):
            chi_real(gamma_rect((2, 2)), (0, 4), (0, 0))

    def test_discrete_integral_against_direct_sum(self):
        for freq in [(2, 3), (4, 4), (3, 5)]:
            m1, m2 = freq
            nodes = build_index_set(freq)
            for a in range(-4 * m1, 4 * m1 + 1):
                for b in range(-4 * m2, 4 * m2 + 1, 1):
                    if (a + b) % 2:
                        continue
                    direct = np.sum(nodes.weights * [chi(freq, (a, b), i) for i in nodes.indices])
                    assert abs(direct - discrete_integral(freq, a, b)) < 1e-12

    def test_norm_values(self):
        assert complex_norm_sq((5, 3), (0, 0)) == 1
        assert complex_norm_sq((5, 3), (1, 1)) == Fraction(1, 2)
        assert complex_norm_sq((5, 3), (10, 0)) == 1


class TestOrthogonality:
    @pytest.mark.parametrize("freq", PAIRS_UP_TO_7)
    def test_complex_gram(self, freq):
        m1 = freq[0]
        for s in all_kinds(freq):
            gram = gram_matrix(s)
            expected = np.array([1.0 if a in (0, 2 * m1) else 0.5 for a in s.g1.tolist()])
            np.testing.assert_allclose(gram, np.diag(expected), atol=1e-12)
            assert set(s.norms) <= {Fraction(1), Fraction(1, 2)}

    @pytest.mark.parametrize("freq", PAIRS_UP_TO_7)
    def test_real_gram(self, freq):
        for s in all_kinds(freq):
            gram = gram_matrix(s, real=True)
            np.testing.assert_allclose(gram, np.diag(s.real_norm_array), atol=1e-12)
            assert set(s.real_norms) <= {Fraction(1), Fraction(1, 2), Fraction(1, 4)}

    @pytest.mark.parametrize("freq", [(5, 3), (4, 7)])
    def test_norms_match_direct_sums(self, freq):
        s = gamma_triangle(freq)
        basis = chi_matrix(s)
        for k in range(len(s)):
            assert brute_force_norm(freq, basis[:, k]) == pytest.approx(float(s.norms[k]), abs=1e-13)

    def test_inner_product_examples(self):
        freq = (5, 3)
        nodes = build_index_set(freq)
        one = np.ones(len(nodes))
        assert inner_product(freq, one, one) == pytest.approx(1)
        c = np.array([chi(freq, (1, 1), i) for i in nodes.indices])
        d = np.array([chi(freq, (3, 1), i) for i in nodes.indices])
        assert inner_product(freq, c, c) == pytest.approx(0.5)
        assert abs(inner_product(freq, c, d)) < 1e-14

    def test_inner_product_shape_mismatch(self):
        with pytest.raises(ValueError):
            inner_product((5, 3), np.ones(33), np.ones(32))
