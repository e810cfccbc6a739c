"""Acceptance suite: every release criterion at its pinned tolerance.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line per
criterion.  Criterion 5 (noise-floor slopes for all three error models) is the
slow tier; deselect it with ``-m "not slow"``.
"""
import math
import time

import numpy as np
import pytest

from adaptive_tomo import (
    Adaptive,
    AdaptivePow,
    CampaignSpec,
    KnownBasis,
    NoError,
    PerExperimentError,
    PerSettingError,
    FixedError,
    ReducedAdaptive,
    RngContext,
    Static,
    alpha_sweep,
    bloch_to_density,
    chernoff_exponent,
    density_to_bloch,
    eigendecompose,
    fidelity,
    fit_campaign,
    infidelity_quadratic_approx,
    mle,
    mub_triplet,
    named_state,
    negative_loglikelihood,
    noise_floor_sweep,
    purity,
    run_campaign,
    run_protocol,
)
from adaptive_tomo.estimation import UnderdeterminedError
from adaptive_tomo.fixtures import EQ7_BLOCH
from adaptive_tomo.measurement import CountRecord

SEED = 1729
FIG2_GRID = tuple(int(round(x)) for x in np.geomspace(300, 100_000, 10))
E_HALF_DEGREE = math.radians(0.5)


def check(cid, name, ok, detail):
    print(f"\nACCEPTANCE {cid} {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {cid} {name}: {detail}"


def fig2_fit(protocol, reps=150):
    spec = CampaignSpec(protocol, EQ7_BLOCH, FIG2_GRID, reps=reps, seed=SEED)
    return fit_campaign(run_campaign(spec))


@pytest.fixture(scope="module")
def fig2_fits():
    return {
        "static": fig2_fit(Static()),
        "adaptive_pow": fig2_fit(AdaptivePow(2.0 / 3.0)),
        "adaptive_half": fig2_fit(Adaptive(0.5)),
        "known_basis": fig2_fit(KnownBasis()),
        "reduced": fig2_fit(ReducedAdaptive(0.5)),
    }


class TestCriterion1ScalingExponents:
    WINDOWS = {
        "static": (-0.58, -0.45),
        "adaptive_pow": (-0.93, -0.80),
        "adaptive_half": (-1.05, -0.92),
        "known_basis": (-1.06, -0.92),
    }

    def test_fig2_exponents(self, fig2_fits):
        detail = []
        ok = True
        for key, (lo, hi) in self.WINDOWS.items():
            p = fig2_fits[key].p
            ok &= lo <= p <= hi
            detail.append(f"{key}: p={p:+.3f} in [{lo}, {hi}]")
        check(1, "scaling exponents", ok, "; ".join(detail))


class TestCriterion2OrderOfMagnitude:
    def test_tenfold_reduction_at_3e4(self):
        static = run_campaign(
            CampaignSpec(Static(), EQ7_BLOCH, (30_000,), reps=150, seed=SEED)
        ).rows[0].mean_infidelity
        adaptive = run_campaign(
            CampaignSpec(Adaptive(0.5), EQ7_BLOCH, (30_000,), reps=150, seed=SEED)
        ).rows[0].mean_infidelity
        ok = adaptive <= static / 5.0
        check(
            2,
            "order-of-magnitude reduction",
            ok,
            f"static={static:.3e}, adaptive={adaptive:.3e}, ratio={static / adaptive:.1f}",
        )


class TestCriterion3AlphaOptimum:
    def test_half_minimizes_prefactor(self):
        # Known red: with the final estimate fitted on the records of BOTH
        # phases (as the protocol prescribes), preliminary samples are never
        # wasted, so the measured prefactor keeps improving past alpha=0.5 and
        # the bowl bottoms near 0.7 on this grid (confirmed at 1600 reps and
        # at N=1e6).  Discarding phase-1 records from the final fit moves the
        # bottom to a statistical tie between 0.3 and 0.5, not a clean 0.5
        # optimum, and contradicts the protocol.  Kept faithful and red.
        base = CampaignSpec(Adaptive(0.5), EQ7_BLOCH, FIG2_GRID, reps=400, seed=SEED)
        sweep = alpha_sweep((0.1, 0.3, 0.5, 0.7, 0.9), base)
        betas = {alpha: fit for alpha, fit in sweep}
        best = min(betas, key=lambda a: betas[a].beta)
        ok = best == 0.5
        detail = ", ".join(f"beta({a})={f.beta:.2f}+-{f.sigma_beta:.2f}" for a, f in sorted(betas.items()))
        check(3, "alpha optimum", ok, detail + f"; argmin={best}")


class TestCriterion4ReducedAdaptive:
    def test_reduced_matches_full_adaptive(self, fig2_fits):
        p_reduced = fig2_fits["reduced"].p
        p_full = fig2_fits["adaptive_half"].p
        ok = -1.05 <= p_reduced <= -0.80 and abs(p_reduced - p_full) <= 0.1
        check(
            4,
            "reduced adaptive scaling",
            ok,
            f"p_reduced={p_reduced:+.3f} in [-1.05, -0.80], "
            f"|p_reduced - p_full|={abs(p_reduced - p_full):.3f} <= 0.1",
        )


@pytest.mark.slow
class TestCriterion5NoiseFloorSlopes:
    E_GRID = tuple(float(x) for x in np.geomspace(1e-3, 3e-2, 5))
    FACTORIES = {
        "model1": PerSettingError,
        "model2": PerExperimentError,
        "model3": FixedError,
    }

    @pytest.mark.parametrize("model_name", ["model1", "model2", "model3"])
    def test_floor_slopes(self, model_name):
        results = noise_floor_sweep(
            self.FACTORIES[model_name],
            self.E_GRID,
            [Static(), Adaptive(0.5)],
            EQ7_BLOCH,
            reps=400,
            seed=SEED,
            n_start=1000,
            n_cap=20_000_000,
        )
        static_fit, adaptive_fit = results[0].slope_fit, results[1].slope_fit
        converged = all(pt.converged for r in results for pt in r.points)
        ok = (
            converged
            and static_fit is not None
            and adaptive_fit is not None
            and 0.85 <= static_fit.p <= 1.2
            and 1.75 <= adaptive_fit.p <= 2.25
        )
        detail = (
            f"{model_name}: static slope={'n/a' if static_fit is None else f'{static_fit.p:.3f}'} "
            f"in [0.85, 1.2], adaptive slope="
            f"{'n/a' if adaptive_fit is None else f'{adaptive_fit.p:.3f}'} in [1.75, 2.25]"
        )
        check(5, f"noise-floor slopes ({model_name})", ok, detail)


class TestCriterion6FloorLevels:
    def test_half_degree_floors(self):
        results = noise_floor_sweep(
            PerSettingError,
            [E_HALF_DEGREE],
            [Static(), Adaptive(0.5)],
            EQ7_BLOCH,
            reps=400,
            seed=SEED,
            n_start=1000,
            n_cap=20_000_000,
        )
        static_pt = results[0].points[0]
        adaptive_pt = results[1].points[0]
        ok = (
            static_pt.converged
            and adaptive_pt.converged
            and 3e-3 <= static_pt.floor_infidelity <= 3e-2
            and 3e-4 <= adaptive_pt.floor_infidelity <= 3e-3
        )
        check(
            6,
            "floor levels at E=0.5deg",
            ok,
            f"static={static_pt.floor_infidelity:.3e} in [3e-3, 3e-2], "
            f"adaptive={adaptive_pt.floor_infidelity:.3e} in [3e-4, 3e-3]",
        )


class TestCriterion7FixtureValues:
    def test_fixture_values(self):
        p = purity(named_state("eq10"))
        f = fidelity(named_state("eq10"), named_state("eq7"))
        ok = abs(p - 0.991) <= 1e-3 and abs(f - 0.992) <= 1e-3
        check(7, "fixture values", ok, f"purity(eq10)={p:.4f}, F(eq10,eq7)={f:.4f}")


class TestCriterion8PropertySuite:
    def test_fast_property_tier(self):
        t0 = time.perf_counter()
        parts = []

        # Fidelity closed form vs the square-root definition, 1e4 pairs.
        rng = np.random.default_rng(SEED)
        rs = self._ball(rng, 10_000)
        ss = self._ball(rng, 10_000)
        worst = 0.0
        for r, s in zip(rs, ss):
            rho, sigma = bloch_to_density(r), bloch_to_density(s)
            worst = max(worst, abs(fidelity(rho, sigma) - self._general_fidelity(rho, sigma)))
        parts.append(("fidelity oracle", worst < 1e-10, f"max|diff|={worst:.2e}"))

        # Second-order infidelity: cubic remainder.
        worst_ratio = 0.0
        for _ in range(30):
            rho = bloch_to_density(self._ball(rng, 1)[0] * 0.8)
            h = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            delta = (h + h.conj().T) / 2
            delta -= (np.trace(delta).real / 2) * np.eye(2)
            delta /= np.linalg.norm(delta)
            for eps in (1e-1, 1e-2, 1e-3):
                sigma = rho + eps * delta
                if np.linalg.norm(density_to_bloch(sigma)) > 1.0:
                    continue
                err = abs(
                    infidelity_quadratic_approx(rho, eps * delta)
                    - (1.0 - fidelity(rho, sigma))
                )
                worst_ratio = max(worst_ratio, err / eps**3)
        parts.append(("quadratic remainder", worst_ratio < 50.0, f"max err/eps^3={worst_ratio:.1f}"))

        # Chernoff sandwich on 1e3 low-infidelity full-rank pairs.
        sandwich_ok, count = True, 0
        while count < 1000:
            r = self._ball(rng, 1)[0] * 0.95
            s = r + rng.normal(scale=0.02, size=3)
            if np.linalg.norm(s) > 0.98:
                continue
            rho, sigma = bloch_to_density(r), bloch_to_density(s)
            f = fidelity(rho, sigma)
            if 1.0 - f > 0.1:
                continue
            d = chernoff_exponent(rho, sigma)
            sandwich_ok &= (1.0 - f) / 2.0 - 1e-6 <= d <= -math.log(f) + 1e-6
            count += 1
        parts.append(("chernoff sandwich", sandwich_ok, "1000 pairs"))

        # Mutually unbiased triplet invariants.
        mub_ok = True
        for r in self._ball(rng, 200):
            triplet = mub_triplet(eigendecompose(bloch_to_density(r)))
            for i in range(3):
                mub_ok &= abs(np.linalg.norm(triplet.axes[i]) - 1.0) < 1e-10
                for j in range(i + 1, 3):
                    mub_ok &= abs(float(np.dot(triplet.axes[i], triplet.axes[j]))) < 1e-10
        parts.append(("mub invariants", mub_ok, "200 triplets"))

        # MLE dominance over a Bloch-ball grid on 100 random datasets.
        dominance_ok = True
        coarse = self._grid(0.02)
        checked = 0
        while checked < 100:
            n_axes = int(rng.integers(3, 7))
            axes = rng.normal(size=(n_axes, 3))
            axes /= np.linalg.norm(axes, axis=1, keepdims=True)
            records = []
            for k in range(n_axes):
                shots = int(rng.integers(5, 200))
                records.append(
                    CountRecord(axes[k], axes[k], shots, int(rng.integers(0, shots + 1)))
                )
            try:
                est = mle(records)
            except UnderdeterminedError:
                continue
            obj = negative_loglikelihood(est.rho, records)
            center = density_to_bloch(est.rho)
            local = self._grid(0.002, center=center, half=0.03)
            best = min(
                float(np.min(self._objective(records, coarse))),
                float(np.min(self._objective(records, local))),
            )
            dominance_ok &= obj <= best + 1e-6
            checked += 1
        parts.append(("mle grid dominance", dominance_ok, "100 datasets"))

        # Exact budget accounting for every protocol at N = 6..30.
        budget_ok = True
        rho = named_state("eq7")
        for n in range(6, 31):
            for spec in (Static(), Adaptive(0.5), AdaptivePow(), ReducedAdaptive(), KnownBasis()):
                budget_ok &= (
                    run_protocol(spec, rho, n, NoError(), RngContext(SEED, (n,))).total_shots == n
                )
        parts.append(("budget accounting", budget_ok, "N=6..30, 5 protocols"))

        # Byte-reproducibility of a 2-rep campaign, serial vs threaded.
        spec = CampaignSpec(Adaptive(0.5), EQ7_BLOCH, (90, 300), reps=2, seed=SEED)
        repro_ok = run_campaign(spec, threads=1).rows == run_campaign(spec, threads=8).rows
        parts.append(("thread reproducibility", repro_ok, "1 vs 8 threads"))

        elapsed = time.perf_counter() - t0
        parts.append(("fast-tier runtime", elapsed < 30.0, f"{elapsed:.1f}s < 30s"))
        ok = all(p[1] for p in parts)
        check(8, "property suites", ok, "; ".join(f"{n}: {'ok' if g else 'FAIL'} ({d})" for n, g, d in parts))

    @staticmethod
    def _ball(rng, count):
        v = rng.normal(size=(count, 3))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        return v * (rng.uniform(size=(count, 1)) ** (1.0 / 3.0))

    @staticmethod
    def _general_fidelity(rho, sigma):
        def sqrt_psd(m):
            w, v = np.linalg.eigh(m)
            return v @ np.diag(np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T

        m = sqrt_psd(rho) @ sigma @ sqrt_psd(rho)
        return float(np.sum(np.sqrt(np.clip(np.linalg.eigvalsh(m), 0.0, None))) ** 2)

    @staticmethod
    def _grid(spacing, center=(0.0, 0.0, 0.0), half=1.0):
        ticks = np.arange(-half, half + 1e-12, spacing)
        pts = np.stack(np.meshgrid(ticks, ticks, ticks, indexing="ij"), axis=-1).reshape(-1, 3)
        pts = pts + np.asarray(center)
        return pts[np.linalg.norm(pts, axis=1) <= 1.0]

    @staticmethod
    def _objective(records, points):
        total = np.zeros(len(points))
        for rec in records:
            f = rec.n_plus / rec.n_shots
            ft = (rec.n_plus + 0.5) / (rec.n_shots + 1.0)
            predicted = 0.5 * (1.0 + points @ rec.intended_axis)
            total += rec.n_shots * (predicted - f) ** 2 / (ft * (1.0 - ft))
        return total
