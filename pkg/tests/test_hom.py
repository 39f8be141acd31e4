import numpy as np
import pytest

from plugins.common import InputError, ResourceBudgetError, config
from plugins.hom import (
    FiniteAbelianPGroup,
    GroupMap,
    best_affine_map,
    best_homomorphism,
    blr_agreement,
    blr_agreement_estimate,
    correct_to_homomorphism,
    enumerate_homomorphisms,
    homomorphism_count,
    is_homomorphism,
    shift_correction,
)

Z4 = FiniteAbelianPGroup.from_spec("2^2")
Z2 = FiniteAbelianPGroup.from_spec("2^1")


def random_map(domain: str, codomain: str, seed: int) -> GroupMap:
    g = FiniteAbelianPGroup.from_spec(domain)
    h = FiniteAbelianPGroup.from_spec(codomain)
    table = np.random.default_rng(seed).integers(0, h.order, size=g.order)
    return GroupMap(g, h, table)


# ========== 群 ==========

def test_group_indexing():
    g = FiniteAbelianPGroup.from_spec("2^2 x 2^1")
    assert g.order == 8 and g.rank == 2 and g.exponent == 4
    assert g.element(5) == (1, 1)
    assert g.index((3, 1)) == 7
    assert g.generator(1) == 4
    assert int(g.add(g.index((3, 0)), g.index((2, 1)))) == g.index((1, 1))
    assert g.to_spec() == "2^2 x 2^1"
    assert not g.is_elementary
    assert FiniteAbelianPGroup.elementary(3, 2).to_spec() == "3^1 x 3^1"


def test_group_errors():
    with pytest.raises(InputError, match="prime"):
        FiniteAbelianPGroup(4, (1,))
    with pytest.raises(InputError, match="mixes primes"):
        FiniteAbelianPGroup.from_spec("2^1 x 3^1")
    with pytest.raises(InputError, match="bad group factor"):
        FiniteAbelianPGroup.from_spec("2^a")
    config.hom_max_order = 8
    with pytest.raises(ResourceBudgetError) as info:
        FiniteAbelianPGroup.from_spec("2^4")
    assert info.value.limit == "hom_max_order"


def test_map_errors():
    with pytest.raises(InputError, match="power of Z_2"):
        GroupMap(Z2, Z4, [0, 1])
    with pytest.raises(InputError, match="primes differ"):
        GroupMap(Z2, FiniteAbelianPGroup.from_spec("3^1"), [0, 1])
    with pytest.raises(InputError, match="needs 4 values"):
        GroupMap(Z4, Z2, [0, 1])
    with pytest.raises(InputError, match="out of range"):
        GroupMap(Z4, Z2, [0, 1, 2, 0])
    with pytest.raises(InputError, match="expected 4 lines"):
        GroupMap.from_text("0\n1\n", Z4, Z2)


def test_map_text_round_trip(write_text):
    phi = random_map("3^1 x 3^1", "3^1 x 3^1", seed=1)
    path = write_text("phi.map", phi.to_text())
    assert GroupMap.from_file(path, phi.domain, phi.codomain) == phi


# ========== BLR 一致率 ==========

def test_corrupted_z4_map_agreement():
    phi = GroupMap(Z4, Z2, [0, 0, 0, 1])
    assert blr_agreement(phi) == pytest.approx(10 / 16)
    assert not is_homomorphism(phi)


@pytest.mark.parametrize("domain,codomain", [("2^1 x 2^1 x 2^1", "2^1 x 2^1"), ("3^2", "3^1"), ("3^1 x 3^1", "3^1")])
def test_homomorphisms_have_full_agreement(domain, codomain):
    g = FiniteAbelianPGroup.from_spec(domain)
    h = FiniteAbelianPGroup.from_spec(codomain)
    for psi in enumerate_homomorphisms(g, h):
        assert is_homomorphism(psi)
        assert blr_agreement(psi) == 1.0


@pytest.mark.parametrize("domain,codomain", [("2^1 x 2^2", "2^1"), ("3^1 x 3^1", "3^1")])
def test_shifted_homomorphism_never_agrees(domain, codomain):
    g = FiniteAbelianPGroup.from_spec(domain)
    h = FiniteAbelianPGroup.from_spec(codomain)
    psi = GroupMap.from_images(g, h, [1] * g.rank)
    assert blr_agreement(psi.shifted(1)) == 0.0


@pytest.mark.parametrize("domain,codomain,seed", [
    ("3^1 x 3^1", "3^1", 3),
    ("2^3 x 2^1", "2^1 x 2^1", 2),
])
def test_exact_agreement_matches_direct_count(domain, codomain, seed, threads):
    config.chunk_elements = 64
    phi = random_map(domain, codomain, seed)
    g, h, table = phi.domain, phi.codomain, phi.table
    hits = sum(
        int(h.add(table[x], table[y])) == int(table[int(g.add(x, y))])
        for x in range(g.order) for y in range(g.order)
    )
    assert blr_agreement(phi) == pytest.approx(hits / g.order ** 2)


def test_pair_budget():
    config.hom_pair_budget = 15
    with pytest.raises(ResourceBudgetError) as info:
        blr_agreement(GroupMap(Z4, Z2, [0, 0, 0, 1]))
    assert info.value.limit == "hom_pair_budget"
    assert "--estimate" in str(info.value)


def test_estimate_is_thread_independent():
    phi = random_map("2^2 x 2^2", "2^1", seed=4)
    config.block_size = 500
    config.threads = 1
    single = blr_agreement_estimate(phi, trials=4000, seed=5)
    config.threads = 8
    multi = blr_agreement_estimate(phi, trials=4000, seed=5)
    assert single == multi
    assert single.test == "hom-blr" and single.queries_per_trial == 3


def test_estimate_tracks_exact_agreement():
    phi = random_map("2^3", "2^1 x 2^1", seed=6)
    report = blr_agreement_estimate(phi, trials=50_000, seed=7)
    assert abs(report.acceptance - blr_agreement(phi)) <= 5 * report.stderr + 1e-12


def test_estimate_errors():
    phi = GroupMap(Z4, Z2, [0, 0, 0, 1])
    with pytest.raises(InputError, match="trials"):
        blr_agreement_estimate(phi, trials=0, seed=1)
    with pytest.raises(InputError, match="seed"):
        blr_agreement_estimate(phi, trials=10, seed=-1)


# ========== 同态穷举 ==========

def test_homomorphism_count():
    assert homomorphism_count(Z4, Z2) == 2
    assert len(list(enumerate_homomorphisms(Z4, Z2))) == 2
    g = FiniteAbelianPGroup.from_spec("3^1 x 3^2")
    h = FiniteAbelianPGroup.from_spec("3^1 x 3^1")
    maps = list(enumerate_homomorphisms(g, h))
    assert len(maps) == homomorphism_count(g, h) == 81
    assert len(set(maps)) == 81


def test_enumeration_budget():
    config.hom_enum_budget = 10
    g = FiniteAbelianPGroup.from_spec("2^1 x 2^1")
    h = FiniteAbelianPGroup.from_spec("2^1 x 2^1")
    with pytest.raises(ResourceBudgetError) as info:
        list(enumerate_homomorphisms(g, h))
    assert info.value.limit == "hom_enum_budget"


def test_best_homomorphism_prefers_first_on_ties():
    psi, agreement = best_homomorphism(GroupMap(Z4, Z2, [0, 0, 0, 1]))
    assert agreement == pytest.approx(0.75)
    assert psi.table.tolist() == [0, 0, 0, 0]


@pytest.mark.parametrize("seed", range(3))
def test_best_homomorphism_matches_enumeration(seed, threads):
    config.chunk_elements = 32
    phi = random_map("3^1 x 3^1", "3^1", seed=seed)
    psi, agreement = best_homomorphism(phi)
    scores = [phi.agreement(other) for other in enumerate_homomorphisms(phi.domain, phi.codomain)]
    assert agreement == pytest.approx(max(scores))
    assert phi.agreement(psi) == pytest.approx(agreement)
    assert is_homomorphism(psi)


@pytest.mark.parametrize("seed", range(5))
def test_best_affine_map_on_boolean_cube(seed):
    phi = random_map("2^1 x 2^1 x 2^1", "2^1", seed=seed)
    psi, shift, agreement = best_affine_map(phi)
    assert agreement >= 0.5
    assert agreement >= best_homomorphism(phi)[1]
    assert phi.agreement(psi.shifted(shift)) == pytest.approx(agreement)


# ========== 平移修正 ==========

def test_shift_correction_recovers_shifted_homomorphism():
    g = FiniteAbelianPGroup.from_spec("3^1 x 3^1")
    h = FiniteAbelianPGroup.from_spec("3^1")
    psi = GroupMap.from_images(g, h, [1, 2])
    phi = psi.shifted(1)
    correction = shift_correction(phi, psi, (1,))
    assert correction.shifted_size == 9
    assert correction.kept_size == 3
    assert is_homomorphism(correction.psi)
    assert (correction.coordinate, correction.generator) == (0, 1)
    assert correction.psi.generator_images().tolist() == [2, 2]
    assert correction.agreement == pytest.approx(3 / 9)
    assert correction.psi((1, 0)) == phi((1, 0))


@pytest.mark.parametrize("domain,codomain,seed", [
    ("3^1 x 3^1", "3^1", 1),
    ("2^2 x 2^1", "2^1 x 2^1", 2),
    ("5^1 x 5^1", "5^1", 3),
])
def test_correction_invariants(domain, codomain, seed):
    phi = random_map(domain, codomain, seed)
    correction = correct_to_homomorphism(phi)
    assert is_homomorphism(correction.psi)
    assert correction.kept_size <= correction.shifted_size
    assert correction.agreement >= correction.kept_size / phi.domain.order
    assert correction.agreement == pytest.approx(phi.agreement(correction.psi))
    payload = correction.to_dict()
    if correction.kept_size:
        assert payload["coordinate"] == correction.coordinate + 1
    else:
        assert payload["coordinate"] is None
    assert len(payload["generator_images"]) == phi.domain.rank


def test_shift_correction_errors():
    phi = GroupMap(Z4, Z2, [0, 0, 0, 1])
    with pytest.raises(InputError, match="not a homomorphism"):
        shift_correction(phi, phi, 0)
    zero = GroupMap(Z4, Z2, [0, 0, 0, 0])
    with pytest.raises(InputError, match="no element"):
        shift_correction(GroupMap(Z4, Z2, [1, 1, 1, 1]), zero, 0)
    with pytest.raises(InputError, match="out of range"):
        shift_correction(phi, zero, 2)
    other = GroupMap(Z2, Z2, [0, 0])
    with pytest.raises(InputError, match="different groups"):
        shift_correction(phi, other, 0)


def test_shift_correction_without_generator_coordinate():
    # E = {0, 2}: 每个元素的坐标都不是 Z_4 的生成元
    phi = GroupMap(Z4, Z2, [0, 1, 0, 1])
    zero = GroupMap(Z4, Z2, [0, 0, 0, 0])
    correction = shift_correction(phi, zero, 0)
    assert correction.kept_size == 0
    assert correction.coordinate is None
    assert correction.generator == 0
    assert correction.psi == zero
    assert correction.to_dict()["coordinate"] is None
