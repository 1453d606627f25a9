import numpy as np
import pytest

from paretolab import landscapes as L
from paretolab.errors import CapacityError, DomainError, MalformedInstanceError

from conftest import oracle_nondominated


def test_generate_k0_has_empty_links():
    inst = L.generate_instance(10, 0, 2, 7)
    assert inst.links.shape == (10, 0)
    assert inst.tables.shape == (2, 10, 2)


def test_generate_deterministic():
    a = L.generate_instance(10, 0, 2, 123)
    b = L.generate_instance(10, 0, 2, 123)
    assert a == b
    assert L.dumps_instance(a) == L.dumps_instance(b)


def test_generate_extension_in_m_is_stable():
    small = L.generate_instance(12, 2, 3, 5)
    big = L.generate_instance(12, 2, 8, 5)
    assert np.array_equal(big.tables[:3], small.tables)
    assert np.array_equal(big.links, small.links)


def test_generate_table_scale():
    inst = L.generate_instance(16, 0, 20, 99)
    assert inst.tables.shape == (20, 16, 2)
    assert inst.tables.min() >= 0.0 and inst.tables.max() <= 1.0


def test_generate_links_valid():
    inst = L.generate_instance(12, 4, 2, 3)
    for j in range(12):
        row = list(inst.links[j])
        assert len(row) == 4 and len(set(row)) == 4 and j not in row
        assert all(0 <= v < 12 for v in row)


def test_generate_domain_errors():
    with pytest.raises(DomainError):
        L.generate_instance(5, 5, 2, 1)  # k must stay below n
    with pytest.raises(DomainError):
        L.generate_instance(5, -1, 2, 1)
    with pytest.raises(DomainError):
        L.generate_instance(5, 0, 0, 1)
    with pytest.raises(DomainError):
        L.generate_instance(0, 0, 1, 1)


def test_evaluate_single_variable():
    inst = L.generate_instance(1, 0, 1, 11)
    assert L.evaluate(inst, "0")[0] == inst.tables[0, 0, 0]
    assert L.evaluate(inst, "1")[0] == inst.tables[0, 0, 1]


def test_evaluate_hand_average():
    inst = L.generate_instance(2, 0, 1, 21)
    want = (inst.tables[0, 0, 0] + inst.tables[0, 1, 0]) / 2
    assert L.evaluate(inst, "00")[0] == pytest.approx(want, abs=1e-15)


def test_evaluate_all_matches_single(rng):
    inst = L.generate_instance(8, 3, 4, 17)
    table = L.evaluate_all(inst)
    for code in rng.integers(0, 256, size=12):
        bits = L.code_to_bits(int(code), 8)
        assert np.allclose(table[code], L.evaluate(inst, bits), atol=1e-15)


def test_enumeration_mean_equals_table_mean():
    # every table entry is selected uniformly often across all solutions
    inst = L.generate_instance(10, 2, 3, 13)
    values = L.evaluate_all(inst)
    want = inst.tables.mean(axis=2).mean(axis=1)
    assert np.allclose(values.mean(axis=0), want, atol=1e-12)


def test_k0_bit_flip_linearity(rng):
    inst = L.generate_instance(10, 0, 3, 31)
    for _ in range(20):
        code = int(rng.integers(0, 1024))
        j = int(rng.integers(0, 10))
        flipped = code ^ (1 << (10 - 1 - j))
        before = L.evaluate(inst, L.code_to_bits(code, 10))
        after = L.evaluate(inst, L.code_to_bits(flipped, 10))
        bit = (code >> (10 - 1 - j)) & 1
        delta = (inst.tables[:, j, 1 - bit] - inst.tables[:, j, bit]) / 10
        assert np.allclose(after - before, delta, atol=1e-15)


def test_enumerate_pareto_set_m1():
    inst = L.generate_instance(6, 0, 1, 3)
    front = L.enumerate_pareto_set(inst)
    values = L.evaluate_all(inst)
    assert len(front) == 1
    bits, vec = front[0]
    assert vec[0] == values.max()
    assert L.proportion_pareto_optimal(inst) == pytest.approx(2.0**-6)


def test_enumerate_pareto_set_matches_double_loop():
    inst = L.generate_instance(8, 1, 3, 5)
    values = L.evaluate_all(inst)
    want = oracle_nondominated(values.tolist())
    got = L.enumerate_pareto_set(inst)
    assert [b for b, _ in got] == [L.code_to_bits(c, 8) for c in want]
    kept = np.array([v for _, v in got])
    # mutually non-dominated
    assert set(map(tuple, kept)) == set(map(tuple, values[want]))


def test_proportion_trend_small():
    low = np.mean([L.proportion_pareto_optimal(L.generate_instance(10, 0, 2, s))
                   for s in range(10)])
    high = np.mean([L.proportion_pareto_optimal(L.generate_instance(10, 0, 20, s))
                    for s in range(10)])
    assert low < 0.05
    assert high > 0.99


def test_enumeration_capacity_guard():
    inst = L.generate_instance(25, 0, 2, 1)
    with pytest.raises(CapacityError):
        L.evaluate_all(inst)
    with pytest.raises(CapacityError):
        L.enumerate_pareto_set(inst)


def test_save_load_round_trip(tmp_path):
    inst = L.generate_instance(7, 2, 3, 909)
    path = tmp_path / "inst.nk"
    L.save_instance(inst, path)
    back = L.load_instance(path)
    assert back == inst
    assert L.dumps_instance(back) == L.dumps_instance(inst)


def test_load_truncated_file(tmp_path):
    inst = L.generate_instance(6, 1, 2, 4)
    path = tmp_path / "inst.nk"
    L.save_instance(inst, path)
    text = path.read_text().splitlines()[:-4]
    path.write_text("\n".join(text) + "\n")
    with pytest.raises(MalformedInstanceError):
        L.load_instance(path)


def test_load_rejects_bad_parameters(tmp_path):
    inst = L.generate_instance(6, 1, 2, 4)
    path = tmp_path / "inst.nk"
    L.save_instance(inst, path)
    text = path.read_text().replace("k 1", "k 6")
    path.write_text(text)
    with pytest.raises(MalformedInstanceError):
        L.load_instance(path)


def test_load_rejects_out_of_range_table(tmp_path):
    inst = L.generate_instance(3, 0, 1, 4)
    path = tmp_path / "inst.nk"
    L.save_instance(inst, path)
    lines = path.read_text().splitlines()
    for i, line in enumerate(lines):
        if line.startswith("0 0:"):
            lines[i] = "0 0: 1.5 0.5"
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(MalformedInstanceError):
        L.load_instance(path)


def test_load_rejects_bad_magic(tmp_path):
    path = tmp_path / "x.nk"
    path.write_text("not-an-instance 1\n")
    with pytest.raises(MalformedInstanceError):
        L.load_instance(path)
