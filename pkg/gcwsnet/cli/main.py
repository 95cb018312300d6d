#!/usr/bin/env python3
"""
GCWSNET CLI - Command Line Interface

Hashing, sketching, random Fourier features, training and Monte Carlo validation
as reproducible runs. Every command writes a ``.manifest.json`` sidecar beside
its primary output.

Exit codes: 0 success, 1 data error or failed validation, 2 usage error.
"""

import functools
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Optional, Sequence, Tuple

import click
import numpy as np

from gcwsnet.__version__ import __version__
from gcwsnet.cli.manifest import RunManifest
from gcwsnet.config import get_settings
from gcwsnet.core.errors import (
    ConfigMismatchError,
    GcwsNetError,
    InvalidConfigError,
    InvalidParameterError,
)

logger = logging.getLogger(__name__)


def _exit(code: int) -> None:
    raise SystemExit(code)


def _handle_errors(fn: Callable) -> Callable:
    """Configuration problems become usage errors; data problems exit 1."""

    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return fn(*args, **kwargs)
        except (InvalidConfigError, InvalidParameterError) as e:
            raise click.UsageError(str(e))
        except (GcwsNetError, OSError) as e:
            click.echo(f"Error: {e}", err=True)
            _exit(1)

    return wrapper


def _configure_logging(verbose: int) -> None:
    level = get_settings().log_level
    if verbose >= 2:
        level = "DEBUG"
    elif verbose == 1 and level not in ("DEBUG",):
        level = "INFO"
    logging.basicConfig(
        level=getattr(logging, level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _original_labels(ds) -> np.ndarray:
    return ds.classes[ds.labels] if ds.n_classes else ds.labels.astype(np.float64)


@click.group()
@click.version_option(version=__version__)
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for debug logging")
def cli(verbose: int):
    """
    GCWSNET - pGMM kernel hashing toolkit

    GCWS hashing, one-hot and count-sketch features, NRFF, a small trainer
    and Monte Carlo checks of the underlying probability laws.
    """
    _configure_logging(verbose)


# ---------------------------------------------------------------------------
# hash / sketch / nrff
# ---------------------------------------------------------------------------


@cli.command(name="hash")
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--p", "p", type=float, required=True, help="Power parameter (nonzero)")
@click.option("--k", "k", type=int, default=256, show_default=True, help="Number of hashes")
@click.option("--b", "b", type=int, default=8, show_default=True, help="Bits kept from i*")
@click.option("--tbits", type=int, default=0, show_default=True, help="Bits kept from t*")
@click.option("--seed", type=int, default=0, show_default=True, help="Master seed")
@click.option("--out", "out", type=click.Path(dir_okay=False), required=True)
@click.option("--workers", type=int, default=None, help="Row-parallel workers")
@_handle_errors
def hash_cmd(input_path, p, k, b, tbits, seed, out, workers):
    """
    Hash LIBSVM rows into k GCWS codes each.

    Example:
        gcwsnet hash train.libsvm --p 2 --k 512 --b 8 --out train.codes
    """
    from gcwsnet.core.libsvm import read_libsvm
    from gcwsnet.gcws import GcwsConfig, gcws_hash_batch, write_codes

    cfg = GcwsConfig.create(p=p, k=k, b=b, tbits=tbits, seed=seed)
    manifest = RunManifest.start("hash", {**cfg.to_dict(), "workers": workers})
    manifest.add_input(input_path)

    ds = read_libsvm(input_path)
    codes = gcws_hash_batch(ds.vectors, cfg, workers)
    write_codes(out, cfg, _original_labels(ds), codes)

    manifest.add_output(out)
    manifest.finish(out)
    click.echo(f"Hashed {len(ds)} rows into {cfg.k} codes each -> {out}")


@cli.command()
@click.argument("codes_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--B", "bins", type=int, required=True, help="Number of count-sketch bins")
@click.option("--seed", type=int, default=0, show_default=True, help="Sketch seed")
@click.option("--out", "out", type=click.Path(dir_okay=False), required=True)
@_handle_errors
def sketch(codes_path, bins, seed, out):
    """
    One-hot encode a code dump and count-sketch it into B signed bins.

    Example:
        gcwsnet sketch train.codes --B 8192 --out train.sketch
    """
    from gcwsnet.gcws import read_codes
    from gcwsnet.sketch import CountSketchConfig, count_sketch_batch, one_hot_batch, write_sketch

    cs = CountSketchConfig.create(B=bins, seed=seed)
    manifest = RunManifest.start("sketch", cs.to_dict())
    manifest.add_input(codes_path)

    cfg, labels, codes = read_codes(codes_path)
    values = count_sketch_batch(one_hot_batch(codes, cfg), cs)
    write_sketch(out, cfg, cs, labels, values)

    manifest.parameters["gcws"] = cfg.to_dict()
    manifest.parameters["m"] = cs.reduction_factor(cfg.width)
    manifest.add_output(out)
    manifest.finish(out)
    click.echo(
        f"Sketched {labels.size} rows: width {cfg.width} -> {cs.B} (m={cs.reduction_factor(cfg.width):g})"
    )


@cli.command()
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--k", "k", type=int, default=1024, show_default=True, help="Number of features")
@click.option("--gamma", type=float, default=1.0, show_default=True, help="RBF bandwidth")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--normalize/--no-normalize", default=True, show_default=True)
@click.option("--out", "out", type=click.Path(dir_okay=False), required=True)
@click.option("--workers", type=int, default=None)
@_handle_errors
def nrff(input_path, k, gamma, seed, normalize, out, workers):
    """
    Random Fourier features (normalized by default) for LIBSVM rows.

    Example:
        gcwsnet nrff train.libsvm --k 1024 --gamma 1 --out train.rff
    """
    from gcwsnet.core.libsvm import read_libsvm
    from gcwsnet.nrff import RffConfig, rff_batch, write_rff

    cfg = RffConfig.create(k=k, gamma=gamma, seed=seed)
    manifest = RunManifest.start("nrff", {**cfg.to_dict(), "normalize": normalize})
    manifest.add_input(input_path)

    ds = read_libsvm(input_path)
    values = rff_batch(ds.vectors, cfg, normalize, workers)
    write_rff(out, cfg, normalize, _original_labels(ds), values)

    manifest.add_output(out)
    manifest.finish(out)
    click.echo(f"Computed {cfg.k} features for {len(ds)} rows -> {out}")


# ---------------------------------------------------------------------------
# train
# ---------------------------------------------------------------------------


def _preproc_from_flags(
    preproc: str, p, k, b, tbits, hash_seed, bins, sketch_seed, gamma, rff_k, normalize
):
    from gcwsnet.gcws import GcwsConfig
    from gcwsnet.learn import PreprocConfig
    from gcwsnet.nrff import RffConfig
    from gcwsnet.sketch import CountSketchConfig

    parts: dict = {"kind": preproc, "normalize": normalize}
    if preproc in ("power", "logpower"):
        parts["p"] = p
    if preproc in ("gcws", "gcws+cs"):
        if p is None:
            raise InvalidConfigError(f"--preproc {preproc} needs --p")
        parts["gcws"] = GcwsConfig.create(p=p, k=k, b=b, tbits=tbits, seed=hash_seed)
    if preproc == "gcws+cs":
        if bins is None:
            raise InvalidConfigError("--preproc gcws+cs needs --B")
        parts["sketch"] = CountSketchConfig.create(B=bins, seed=sketch_seed)
    if preproc == "nrff":
        parts["rff"] = RffConfig.create(k=rff_k, gamma=gamma, seed=hash_seed)
    return PreprocConfig.create(**parts)


@cli.command()
@click.argument("features_path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--preproc",
    type=click.Choice(["raw", "power", "logpower", "gcws", "gcws+cs", "nrff"]),
    default="raw",
    show_default=True,
    help="Feature construction for LIBSVM input (dump input is used as is)",
)
@click.option("--p", "p", type=float, default=None, help="Power for power/logpower/gcws")
@click.option("--k", "k", type=int, default=256, show_default=True, help="GCWS hashes")
@click.option("--b", "b", type=int, default=8, show_default=True, help="GCWS bits")
@click.option("--tbits", type=int, default=0, show_default=True)
@click.option("--hash-seed", type=int, default=0, show_default=True, help="GCWS / RFF seed")
@click.option("--B", "bins", type=int, default=None, help="Count-sketch bins for gcws+cs")
@click.option("--sketch-seed", type=int, default=0, show_default=True)
@click.option("--gamma", type=float, default=1.0, show_default=True, help="NRFF bandwidth")
@click.option("--rff-k", type=int, default=1024, show_default=True, help="NRFF features")
@click.option("--normalize/--no-normalize", default=True, show_default=True)
@click.option("--L", "layers", type=click.IntRange(1, 3), default=1, show_default=True)
@click.option("--H", "hidden", type=int, default=200, show_default=True)
@click.option("--lr", type=float, default=0.001, show_default=True)
@click.option("--batch", "batch_size", type=int, default=32, show_default=True)
@click.option("--epochs", type=float, default=1.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True, help="Init and shuffle seed")
@click.option("--evals-per-epoch", type=int, default=50, show_default=True)
@click.option("--eval", "eval_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--history", "history_path", type=click.Path(dir_okay=False), required=True)
@click.option("--checkpoint", "checkpoint_path", type=click.Path(dir_okay=False), default=None)
@click.option("--last-layer", "last_layer_path", type=click.Path(dir_okay=False), default=None)
@click.option("--last-layer-p", type=float, default=1.0, show_default=True)
@click.option("--last-layer-k", type=int, default=256, show_default=True)
@click.option("--last-layer-b", type=int, default=8, show_default=True)
@click.option("--last-layer-every", type=int, default=10, show_default=True)
@click.option("--workers", type=int, default=None)
@_handle_errors
def train(
    features_path,
    preproc,
    p,
    k,
    b,
    tbits,
    hash_seed,
    bins,
    sketch_seed,
    gamma,
    rff_k,
    normalize,
    layers,
    hidden,
    lr,
    batch_size,
    epochs,
    seed,
    evals_per_epoch,
    eval_path,
    history_path,
    checkpoint_path,
    last_layer_path,
    last_layer_p,
    last_layer_k,
    last_layer_b,
    last_layer_every,
    workers,
):
    """
    Train softmax regression or an MLP and write the accuracy history CSV.

    FEATURES_PATH is a LIBSVM file (features built with --preproc) or a
    code / sketch / rff dump from the other commands.

    Example:
        gcwsnet train train.libsvm --preproc gcws --p 2 --k 512 --L 2 \\
            --eval test.libsvm --history hist.csv
    """
    from gcwsnet.core.dumpio import sniff_kind
    from gcwsnet.gcws import GcwsConfig
    from gcwsnet.learn import NetConfig, save_checkpoint, train as train_model
    from gcwsnet.learn.pipeline import LastLayerRecorder, build_train_eval, load_dump_features

    net = NetConfig.create(
        layers=layers,
        hidden=hidden,
        lr=lr,
        batch_size=batch_size,
        epochs=epochs,
        seed=seed,
        evals_per_epoch=evals_per_epoch,
    )
    kind = sniff_kind(features_path)
    params = {"net": net.to_dict(), "input_kind": kind or "libsvm"}
    if last_layer_path:
        if layers == 1:
            raise InvalidConfigError("--last-layer needs --L 2 or 3")
        ll_cfg = GcwsConfig.create(p=last_layer_p, k=last_layer_k, b=last_layer_b, seed=hash_seed)
        params["last_layer"] = {**ll_cfg.to_dict(), "every": last_layer_every}

    if kind is None:
        pre = _preproc_from_flags(
            preproc, p, k, b, tbits, hash_seed, bins, sketch_seed, gamma, rff_k, normalize
        )
        params["preproc"] = pre.to_dict()
    manifest = RunManifest.start("train", params)
    manifest.add_input(features_path)
    if eval_path:
        manifest.add_input(eval_path)

    if kind is None:
        from gcwsnet.core.libsvm import read_libsvm

        train_set = read_libsvm(features_path)
        test_set = (
            read_libsvm(eval_path, n_features=train_set.dim, classes=train_set.classes)
            if eval_path
            else None
        )
        X, X_test = build_train_eval(train_set, pre, test_set, workers)
        y, classes = train_set.labels, train_set.classes
        eval_set = (X_test, test_set.labels) if test_set is not None else None
    else:
        if preproc != "raw":
            logger.warning("ignoring --preproc %s for %s dump input", preproc, kind)
        X, y, classes, signature = load_dump_features(features_path)
        eval_set = None
        if eval_path:
            X_eval, y_eval, _, eval_signature = load_dump_features(eval_path, classes=classes)
            if eval_signature != signature:
                raise ConfigMismatchError(
                    f"{eval_path} was produced under a different configuration"
                )
            eval_set = (X_eval, y_eval)
    n_classes = int(classes.size)

    recorder = None
    if last_layer_path:
        head = NetConfig.create(
            layers=1,
            lr=lr,
            batch_size=batch_size,
            epochs=1.0,
            seed=seed,
            evals_per_epoch=evals_per_epoch,
        )
        recorder = LastLayerRecorder(X, y, ll_cfg, head, eval_set, every=last_layer_every)
    model, history = train_model(X, y, net, eval_set, n_classes=n_classes, on_record=recorder)

    history.write_csv(history_path)
    manifest.add_output(history_path)
    if checkpoint_path:
        save_checkpoint(checkpoint_path, model, net, {"classes": classes.tolist()})
        manifest.add_output(checkpoint_path)
    if recorder is not None:
        recorder.frame().to_csv(
            last_layer_path, index=False, lineterminator="\n", float_format="%.10g"
        )
        manifest.add_output(last_layer_path)
    manifest.finish(history_path)
    click.echo(
        f"Trained on {X.n} rows (width {X.width}); final accuracy {history.final_accuracy:.4f}"
    )


# ---------------------------------------------------------------------------
# validate / ratio
# ---------------------------------------------------------------------------


@cli.command()
@click.option(
    "--suite",
    "suites",
    type=click.Choice(["t1", "t2", "0bit", "cs", "nrff", "all"]),
    multiple=True,
    default=("all",),
    show_default=True,
    help="Suites to run (repeatable)",
)
@click.option("--trials", type=int, default=100_000, show_default=True, help="Hashes per pair")
@click.option(
    "--variance-trials", type=int, default=10_000, show_default=True, help="Estimator trials"
)
@click.option("--pairs", "n_pairs", type=int, default=20, show_default=True)
@click.option("--nrff-k", type=int, default=4096, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out", type=click.Path(dir_okay=False), required=True)
@click.option("--workers", type=int, default=None)
@click.option("--color/--no-color", default=False)
@_handle_errors
def validate(suites, trials, variance_trials, n_pairs, nrff_k, seed, out, workers, color):
    """
    Run Monte Carlo checks and write a JSON report. Exits 1 if any check fails.

    Example:
        gcwsnet validate --suite t1 --suite cs --out report.json
    """
    from gcwsnet.reports import JSONReporter, TextReporter
    from gcwsnet.validate import run_suite

    manifest = RunManifest.start(
        "validate",
        {
            "suites": list(suites),
            "trials": trials,
            "variance_trials": variance_trials,
            "pairs": n_pairs,
            "nrff_k": nrff_k,
            "seed": seed,
        },
    )
    reports = run_suite(suites, trials, variance_trials, seed, n_pairs, nrff_k, workers)
    Path(out).write_text(JSONReporter().generate(reports) + "\n", encoding="utf-8")
    manifest.add_output(out)
    manifest.finish(out)

    click.echo(TextReporter(color=color).generate(reports))
    if not all(r.passed for r in reports):
        _exit(1)


def _parse_floats(values: Sequence[str]) -> Tuple[float, ...]:
    out = []
    for v in values:
        for part in str(v).split(","):
            if part.strip():
                out.append(float(part))
    return tuple(out)


@cli.command()
@click.option("--b", "b_list", type=int, multiple=True, default=(8,), show_default=True)
@click.option("--m", "m_list", multiple=True, help="Reduction factors (repeatable or comma list)")
@click.option(
    "--strategy",
    type=click.Choice(["fixed", "half_bits", "eight_bits"]),
    default="fixed",
    show_default=True,
    help="fixed: given m; half_bits: m=2^(b/2); eight_bits: m=2^(b-8)",
)
@click.option("--J", "j_values", multiple=True, help="J values (repeatable or comma list)")
@click.option("--J-points", "j_points", type=int, default=100, show_default=True)
@click.option("--out", "out", type=click.Path(dir_okay=False), required=True)
@_handle_errors
def ratio(b_list, m_list, strategy, j_values, j_points, out):
    """
    Tabulate the count-sketch variance ratio R(b, J, m) as CSV.

    Example:
        gcwsnet ratio --b 8 --b 12 --b 16 --strategy eight_bits --out ratio.csv
    """
    from gcwsnet.sketch.variance import j_grid, ratio_table

    try:
        ms = _parse_floats(m_list)
        js = _parse_floats(j_values) or tuple(j_grid(j_points).tolist())
    except ValueError as e:
        raise click.UsageError(f"not a number: {e}")
    if strategy == "fixed" and not ms:
        raise click.UsageError("--strategy fixed needs at least one --m")

    manifest = RunManifest.start(
        "ratio", {"b": list(b_list), "m": list(ms), "strategy": strategy, "J": list(js)}
    )
    table = ratio_table(b_list, js, ms, strategy)
    table.to_csv(out, index=False, lineterminator="\n", float_format="%.10g")
    manifest.add_output(out)
    manifest.finish(out)
    click.echo(f"Wrote {len(table)} rows -> {out}")


@cli.command()
def check():
    """Check GCWSNET installation and dependencies."""
    import importlib.util

    click.echo("Checking GCWSNET installation...")
    click.echo("")

    py_version = sys.version_info
    click.echo(f"Python: {py_version.major}.{py_version.minor}.{py_version.micro}")
    if py_version < (3, 10):
        click.echo("   [ERROR] Python 3.10+ required", err=True)
    else:
        click.echo("   [OK] Version OK")

    click.echo("")
    click.echo("Core Dependencies:")

    deps = {
        "click": "Click (CLI framework)",
        "pydantic": "Pydantic (configuration models)",
        "numpy": "NumPy (numerics)",
        "scipy": "SciPy (sparse matrices)",
        "sklearn": "scikit-learn (LIBSVM reader/writer)",
        "pandas": "pandas (CSV tables)",
    }

    missing = 0
    for module_name, description in deps.items():
        spec = importlib.util.find_spec(module_name)
        if spec:
            click.echo(f"   [OK] {description}")
        else:
            missing += 1
            click.echo(f"   [MISSING] {description}")

    settings = get_settings()
    click.echo("")
    click.echo(
        f"Settings: env={settings.environment} log_level={settings.log_level} "
        f"workers={settings.workers} hash_chunk={settings.hash_chunk}"
    )
    click.echo("")
    click.echo("Installation check complete!")
    if missing:
        _exit(1)


def main() -> None:
    try:
        cli.main(prog_name="gcwsnet", standalone_mode=False)
        sys.exit(0)
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        sys.exit(1)
    except click.ClickException as e:
        e.show()
        sys.exit(e.exit_code)
    except SystemExit as e:
        code = e.code
        if code is None:
            code = 0
        elif not isinstance(code, int):
            code = 1
        sys.exit(code)
    except Exception as e:
        # Unexpected crash
        click.echo(f"Unexpected error: {e}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
