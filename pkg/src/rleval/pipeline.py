"""End-to-end analysis: exclusions, curves, averages, bootstrap, normality,
fits, KS, verdicts, report.

Family fits are independent; with jobs > 1 they run on a thread pool and
are reassembled in family order, so output bytes do not depend on the
degree of parallelism. Every random draw derives from the one master seed:
the bootstrap uses it directly, each family's fitting seed mixes the family
index into it.
"""

from concurrent.futures import ThreadPoolExecutor

from .config import config_hash
from .distributions import FAMILY_NAMES, fit_mle, get_family, with_gof
from .errors import ValidationError
from .inference import DEFAULT_ALPHA, dagostino_pearson, verify_reproducibility
from .ingest import apply_exclusions
from .metrics import (
    DEFAULT_STRIDE,
    DEFAULT_WINDOW,
    curve_band,
    learning_curve,
    run_average_return,
)
from .report import AnalysisReport, build_provenance
from .resample import DEFAULT_CONFIDENCE, DEFAULT_RESAMPLES, bootstrap_means
from .rng import splitmix64, validate_seed


def fitting_seed_for(master_seed: int, family_index: int) -> int:
    """Per-family fitting seed; mixing keeps cells independent of ordering."""
    return splitmix64(master_seed ^ (0xF17 + family_index))


def run_analysis(
    config,
    runs,
    *,
    seed: int,
    resamples: int = DEFAULT_RESAMPLES,
    alpha: float = DEFAULT_ALPHA,
    confidence: float = DEFAULT_CONFIDENCE,
    reported=None,
    families=FAMILY_NAMES,
    window: int = DEFAULT_WINDOW,
    stride: int = DEFAULT_STRIDE,
    ks_mode: str = "exact",
    average_return_mode: str = "episodes",
    jobs: int = 1,
) -> AnalysisReport:
    validate_seed(seed)
    if jobs < 1:
        raise ValidationError(f"jobs must be >= 1, got {jobs}")
    families = [get_family(f).name for f in families]
    if len(set(families)) != len(families):
        raise ValidationError("duplicate family names requested")

    digest = config_hash(config)
    trial_set = apply_exclusions(list(runs), config)

    curves = tuple(
        (run.run_id, learning_curve(run, window, stride)) for run in trial_set.runs
    )
    band = curve_band([c for _, c in curves]) if len(curves) >= 2 else None
    averages = tuple(
        (
            run.run_id,
            run_average_return(run, mode=average_return_mode, window=window, stride=stride),
        )
        for run in trial_set.runs
    )

    boot = bootstrap_means(
        [value for _, value in averages], resamples, seed=seed, confidence=confidence
    )
    normality = dagostino_pearson(boot.means, alpha=alpha)

    def fit_one(item):
        index, name = item
        fit = fit_mle(name, boot.means, fitting_seed=fitting_seed_for(seed, index))
        return with_gof(fit, boot.means, mode=ks_mode)

    tasks = list(enumerate(families))
    if jobs > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            fits = tuple(pool.map(fit_one, tasks))
    else:
        fits = tuple(fit_one(task) for task in tasks)

    verdicts = ()
    if reported is not None:
        verdicts = tuple(verify_reproducibility(boot, fits, reported, alpha=alpha))

    provenance = build_provenance(
        config_digest=digest,
        config_name=config.name,
        seed=seed,
        resamples=resamples,
        confidence=confidence,
        alpha=alpha,
        window=window,
        stride=stride,
        families=families,
        reported_value=reported,
        runs_total=config.run_count,
        runs_excluded=trial_set.exclusion_reasons,
        ks_mode=ks_mode,
        average_return_mode=average_return_mode,
    )
    return AnalysisReport(
        config=config,
        config_digest=digest,
        reported_value=reported,
        bootstrap=boot,
        normality=normality,
        fits=fits,
        verdicts=verdicts,
        run_averages=averages,
        curves=curves,
        band=band,
        provenance=provenance,
    )
