"""
Tests for arithmetic over Z_p.
"""
import pytest

from graphcert.core.exceptions import InvalidArgumentError
from graphcert.utils.finite_field import is_prime, mod_inverse, require_prime, solve_mod_p


class TestPrimes:
    @pytest.mark.parametrize("p, expected", [(0, False), (1, False), (2, True), (3, True), (4, False), (9, False), (13, True), (91, False)])
    def test_is_prime(self, p, expected):
        """Trial division on small integers."""
        assert is_prime(p) is expected

    def test_require_prime(self):
        """Composite dimensions raise."""
        assert require_prime(7) == 7
        with pytest.raises(InvalidArgumentError):
            require_prime(8)


class TestInverse:
    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
    def test_all_units(self, p):
        """Every nonzero residue has an inverse."""
        for a in range(1, p):
            assert a * mod_inverse(a, p) % p == 1

    def test_zero_has_no_inverse(self):
        """Multiples of p have no inverse."""
        with pytest.raises(InvalidArgumentError):
            mod_inverse(6, 3)


class TestSolve:
    def test_identity_system(self):
        """The identity system returns its right-hand side."""
        assert solve_mod_p([[1, 0], [0, 1]], [2, 1], 3) == [2, 1]

    def test_dependent_system(self):
        """A rank-deficient consistent system is solved."""
        x = solve_mod_p([[1, 2], [2, 4]], [1, 2], 5)
        assert (x[0] + 2 * x[1]) % 5 == 1

    def test_inconsistent_system(self):
        """An inconsistent system returns None."""
        assert solve_mod_p([[1, 1], [2, 2]], [1, 0], 3) is None

    def test_general_system(self):
        """A full-rank system solves every row."""
        a = [[2, 1, 0], [1, 1, 1], [0, 3, 4]]
        b = [1, 2, 3]
        x = solve_mod_p(a, b, 7)
        for row, rhs in zip(a, b):
            assert sum(r * v for r, v in zip(row, x)) % 7 == rhs
