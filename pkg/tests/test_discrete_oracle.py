import math

import numpy as np
import pytest
from pydantic import ValidationError

from gmacwt.discrete_oracle import (
    DiscreteWiretapSpec,
    EquivocationReport,
    bundled_specs,
    check_delta_achievability,
    compose_wiretap,
    exact_equivocation,
    joint_distribution,
    load_spec,
)
from gmacwt.errors import SizeCapError


def _binary_entropy(p):
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def _one_hot_sum_channel(q, num_users):
    """Deterministic main channel emitting the input sum mod q"""
    rows = []
    for index in range(q**num_users):
        digits, total = index, 0
        for _ in range(num_users):
            total += digits % q
            digits //= q
        row = [0.0] * q
        row[total % q] = 1.0
        rows.append(row)
    return rows


def _random_stochastic(rng, rows, cols):
    matrix = rng.dirichlet(np.ones(cols), size=rows)
    matrix[:, -1] = 1.0 - matrix[:, :-1].sum(axis=1)
    return np.clip(matrix, 0.0, None).tolist()


def _modular_pad_spec(rng, name):
    """X_k = W_k + U_k mod q with uniform U_k: the output carries nothing about the messages"""
    q = int(rng.integers(2, 4))
    k = int(rng.integers(1, 3))
    encoder = tuple(tuple(((w + u) % q,) for u in range(q)) for w in range(q))
    return DiscreteWiretapSpec(
        name=name,
        num_users=k,
        message_counts=(q,) * k,
        randomness_counts=(q,) * k,
        input_alphabet_sizes=(q,) * k,
        block_length=1,
        encoders=(encoder,) * k,
        main_channel=_one_hot_sum_channel(q, k),
        wiretap_channel=_random_stochastic(rng, q, q),
    )


@pytest.fixture(scope="module")
def corpus():
    return bundled_specs()


class TestBundledSpecs:
    def test_corpus_size(self, corpus):
        assert len(corpus) >= 5
        assert {"one_time_pad", "full_leakage", "constant_output", "noisy_xor", "partial_leakage"} <= set(corpus)

    def test_joint_sums_to_one(self, corpus):
        for spec in corpus.values():
            assert np.sum(joint_distribution(spec)) == pytest.approx(1.0, abs=1e-12)

    def test_joint_shape(self, corpus):
        spec = corpus["binary_symmetric_cascade"]
        assert joint_distribution(spec).shape == (4, 4)

    def test_paths_agree(self, corpus):
        for spec in corpus.values():
            assert exact_equivocation(spec).max_discrepancy <= 1e-12

    def test_values_in_unit_interval(self, corpus):
        for spec in corpus.values():
            for subset in exact_equivocation(spec).subsets:
                assert 0.0 <= subset.equivocation <= 1.0


class TestEquivocation:
    def test_one_time_pad(self, corpus):
        report = exact_equivocation(corpus["one_time_pad"])
        assert [s.equivocation for s in report.subsets] == pytest.approx([1.0, 1.0, 1.0], abs=1e-12)

    def test_full_leakage(self, corpus):
        report = exact_equivocation(corpus["full_leakage"])
        assert [s.equivocation for s in report.subsets] == pytest.approx([0.0, 0.0, 0.0], abs=1e-12)

    def test_constant_output(self, corpus):
        assert exact_equivocation(corpus["constant_output"]).min_equivocation == pytest.approx(1.0, abs=1e-12)

    def test_partial_leakage(self, corpus):
        report = exact_equivocation(corpus["partial_leakage"])
        assert report.equivocation(0b01) == pytest.approx(1.0, abs=1e-12)
        assert report.equivocation(0b10) == pytest.approx(0.0, abs=1e-12)
        assert report.equivocation(0b11) == pytest.approx(0.5, abs=1e-12)
        assert [s.label for s in report.subsets] == ["{1}", "{2}", "{1,2}"]

    def test_noisy_xor(self, corpus):
        report = exact_equivocation(corpus["noisy_xor"])
        flip = 0.1 * 0.8 + 0.9 * 0.2
        assert report.equivocation(0b11) == pytest.approx(1.0 - (1.0 - _binary_entropy(flip)) / 2.0, abs=1e-12)
        assert report.equivocation(0b01) == pytest.approx(1.0, abs=1e-12)
        assert report.equivocation(0b10) == pytest.approx(1.0, abs=1e-12)

    def test_single_message_counts_as_secret(self):
        spec = DiscreteWiretapSpec(
            name="silent",
            num_users=1,
            message_counts=(1,),
            randomness_counts=(1,),
            input_alphabet_sizes=(2,),
            block_length=1,
            encoders=((((0,),),),),
            main_channel=((1.0, 0.0), (0.0, 1.0)),
            wiretap_channel=((1.0, 0.0), (0.0, 1.0)),
        )
        report = exact_equivocation(spec)
        assert report.min_equivocation == 1.0
        assert report.subsets[0].h_messages == 0.0


class TestProperties:
    def test_perfect_pad_secures_every_subset(self, rng):
        for i in range(20):
            spec = _modular_pad_spec(rng, f"pad{i}")
            report = exact_equivocation(spec)
            assert report.equivocation((1 << spec.num_users) - 1) == pytest.approx(1.0, abs=1e-10)
            assert report.min_equivocation == pytest.approx(1.0, abs=1e-10)
            assert report.max_discrepancy <= 1e-10

    def test_extra_wiretap_noise_never_lowers_equivocation(self, corpus, rng):
        for name in ("noisy_xor", "partial_leakage", "full_leakage", "binary_symmetric_cascade"):
            spec = corpus[name]
            before = exact_equivocation(spec)
            for _ in range(5):
                size = spec.output_alphabet_size
                degraded = compose_wiretap(spec, _random_stochastic(rng, size, size))
                after = exact_equivocation(degraded)
                for a, b in zip(after.subsets, before.subsets):
                    assert a.equivocation >= b.equivocation - 1e-10

    def test_composed_name(self, corpus):
        spec = corpus["noisy_xor"]
        assert compose_wiretap(spec, [[1.0, 0.0], [0.0, 1.0]]).name == "noisy_xor+degraded"


class TestAchievability:
    def test_check(self, corpus):
        assert check_delta_achievability(corpus["one_time_pad"], 1.0)
        assert check_delta_achievability(corpus["partial_leakage"], 0.0)
        assert not check_delta_achievability(corpus["partial_leakage"], 0.5)

    def test_accepts_report(self, corpus):
        report = exact_equivocation(corpus["noisy_xor"], delta=0.9)
        assert isinstance(report, EquivocationReport)
        assert report.achieves_delta
        assert check_delta_achievability(report, 0.9)
        assert not check_delta_achievability(report, 0.95)


class TestValidation:
    def test_state_cap(self):
        n = 24
        spec = DiscreteWiretapSpec(
            name="long",
            num_users=1,
            message_counts=(2,),
            randomness_counts=(1,),
            input_alphabet_sizes=(2,),
            block_length=n,
            encoders=((((0,) * n,), ((1,) * n,)),),
            main_channel=((1.0, 0.0), (0.0, 1.0)),
            wiretap_channel=((1.0, 0.0), (0.0, 1.0)),
        )
        with pytest.raises(SizeCapError):
            joint_distribution(spec)

    def test_rows_must_sum_to_one(self):
        with pytest.raises(ValidationError):
            DiscreteWiretapSpec(
                name="bad",
                num_users=1,
                message_counts=(2,),
                randomness_counts=(1,),
                input_alphabet_sizes=(2,),
                block_length=1,
                encoders=((((0,),), ((1,),)),),
                main_channel=((0.9, 0.0), (0.0, 1.0)),
                wiretap_channel=((1.0, 0.0), (0.0, 1.0)),
            )

    def test_symbol_outside_alphabet(self):
        with pytest.raises(ValidationError):
            DiscreteWiretapSpec(
                name="bad",
                num_users=1,
                message_counts=(2,),
                randomness_counts=(1,),
                input_alphabet_sizes=(2,),
                block_length=1,
                encoders=((((0,),), ((2,),)),),
                main_channel=((1.0, 0.0), (0.0, 1.0)),
                wiretap_channel=((1.0, 0.0), (0.0, 1.0)),
            )

    def test_load_from_file(self, corpus, tmp_path):
        path = tmp_path / "pad.json"
        path.write_text(corpus["one_time_pad"].model_dump_json())
        assert load_spec(path) == corpus["one_time_pad"]
