"""Smoke test for the ldicode extension module.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`.
"""

import math

import ldicode


def main():
    five = ldicode.known_code("five-qubit")
    assert five.n == 5 and five.q == 2 and five.is_valid()

    ldi = ldicode.to_ldi(five)
    assert ldi.b == 1
    assert ldi.distance_condition(6) == "CondI"
    rows = ldi.code.generators
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            assert ldicode.symplectic_product(rows[i], rows[j]) == 0

    qutrit = ldicode.known_code("five-qudit:3")
    mixed = ldicode.mix_codes([(five, 2), (qutrit, 3)], 6)
    big_k, k = ldicode.logical_dimension(mixed, 6)
    assert big_k == 6 and math.isclose(k, 1.0)
    orders = sorted(order for _, order in ldicode.logical_operators(mixed, 6))
    assert orders == [2, 2, 3, 3]

    found = ldicode.brute_force_distance(mixed, 6, 3, jobs=2)
    assert found is not None and found[0] == 3
    assert ldicode.brute_force_distance(mixed, 6, 2) is None

    assert ldicode.subgroup_order(mixed.generators, 10, 6) == 1296

    xx = ldicode.StabilizerCode(2, [[1, 1, 0, 0]])
    tag, syn = ldicode.classify_undetectable(xx, [0, 0, 1, -1], 6, exact=True)
    assert tag == "unavoidable" and syn == [0]
    zz = ldicode.known_code("rep-z:2:3")
    tag, syn = ldicode.classify_undetectable(zz, [1, 1, 1, 0, 0, 0], 2)
    assert tag == "artifact" and syn == [-2, -2]

    parsed = ldicode.parse_code(mixed.to_text())
    assert parsed.generators == mixed.generators

    try:
        ldicode.StabilizerCode(1, [[1, 0], [0, 1]], q=2)
    except ValueError as e:
        assert "commute" in str(e)
    else:
        raise AssertionError("non-commuting generators accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
