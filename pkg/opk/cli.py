"""
CLI interface for opk using Click
Main entry point for all commands
"""
import sys

import click
from tabulate import tabulate

from .config import get_config, reset_config_instance
from .errors import ConfigError, DomainError, OpkError
from .log import setup_logging
from .models import CheckStatus, Family, PrecisionContext, RunConfig
from .storage import FORMATS, ResultWriter
from .tables import ROW_BUILDERS, expand_lambdas, expand_t, table_cells, table_columns
from .verify import VerificationManager
from .workers import run_cells

EXIT_FAIL = 1
EXIT_USAGE = 2

# CLI keys → internal keys
CONFIG_KEYS = {
    "bits": "bits",
    "jobs": "jobs",
    "format": "format",
    "n-max": "n_max",
    "digits": "digits",
    "richardson-levels": "richardson_levels",
}


def fail(message: str, code: int = EXIT_FAIL):
    click.echo(click.style(f"Error: {message}", fg="red"), err=True)
    sys.exit(code)


def parse_n_range(text: str):
    """'5' → (5, 5); '1..10' → (1, 10)"""
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            return int(lo), int(lo)
        return int(lo), int(hi)
    except ValueError:
        raise click.BadParameter(f"expected N or LO..HI, got '{text}'", param_hint="--n")


def resolve_bits(bits, n_max: int) -> int:
    """--bits, then $OPK_BITS, then the larger of the configured default and the Hankel floor"""
    if bits is not None:
        return bits
    cfg = get_config()
    if cfg.bits_from_env:
        return cfg.bits
    return PrecisionContext.for_hankel(n_max, floor=cfg.bits).bits


def build_run_config(command: str, family, t, lam, nmax, bits, jobs, fmt, out,
                     only=(), n_range=None, oracle=False) -> RunConfig:
    """Turn raw options into a RunConfig; bad values become click usage errors"""
    settings = get_config()
    n_max = nmax if nmax is not None else settings.n_max
    if n_range is not None and nmax is None:
        n_max = max(n_max, n_range[1])
    try:
        bits = resolve_bits(bits, n_max)
        ctx = PrecisionContext(bits)
        t_values = expand_t(t, ctx) if t is not None else ["0"]
        lambdas = expand_lambdas(lam) if lam is not None else ["0"]
        suites = tuple(s.strip() for item in only for s in item.split(",") if s.strip())
        return RunConfig(
            command=command,
            family=Family(family),
            t_values=t_values,
            lambdas=lambdas,
            n_max=n_max,
            bits=bits,
            jobs=jobs if jobs is not None else settings.jobs,
            fmt=fmt or settings.format,
            out=out,
            only=suites,
            n_range=n_range,
            oracle=oracle,
            default_grid=t is None and lam is None,
        )
    except (ValueError, DomainError, ConfigError) as e:
        raise click.UsageError(str(e))


def output_digits(cfg: RunConfig) -> int:
    digits = get_config().digits
    return digits if digits is not None else PrecisionContext(cfg.bits).digits


def grid_options(f):
    """Options shared by every compute command"""
    options = [
        click.option("--family", type=click.Choice([m.value for m in Family]), default=Family.AIRY.value,
                     show_default=True, help="Weight family"),
        click.option("--t", "t", help="t value or range a:b:step"),
        click.option("--lambda", "lam", help="Comma-separated λ values"),
        click.option("--nmax", type=click.IntRange(min=1), help="Largest index (default from config)"),
        click.option("--bits", type=click.IntRange(min=64), help="Working precision in bits"),
        click.option("--jobs", "-j", type=click.IntRange(min=1), help="Worker processes"),
        click.option("--format", "fmt", type=click.Choice(FORMATS), help="Output format"),
        click.option("--out", "-o", type=click.Path(dir_okay=False, writable=True),
                     help="Output file (default stdout)"),
    ]
    for option in reversed(options):
        f = option(f)
    return f


@click.group()
@click.option("--verbose", "-v", count=True, help="-v for info, -vv for debug logging")
@click.pass_context
def cli(ctx, verbose):
    """
    opk - orthogonal polynomials for the generalised Airy and sextic Freud weights

    Compute recurrence coefficients, zeros and moments at arbitrary precision,
    and verify the identities they satisfy.
    """
    ctx.ensure_object(dict)
    ctx.obj["verbosity"] = verbose
    setup_logging(verbose)


def run_table(command: str, cfg: RunConfig, verbosity: int):
    try:
        results = run_cells(ROW_BUILDERS[command], table_cells(cfg), cfg.jobs, verbosity)
    except OpkError as e:
        fail(f"{type(e).__name__}: {e}")
    rows = [row for cell_rows in results for row in cell_rows]
    writer = ResultWriter(cfg.out, cfg.fmt, output_digits(cfg))
    writer.write_table(table_columns(command, cfg.oracle), rows)
    if cfg.out:
        click.echo(click.style(f"[OK] {len(rows)} row(s) written to {cfg.out}", fg="green"), err=True)


@cli.command()
@grid_options
@click.pass_context
def coeffs(ctx, family, t, lam, nmax, bits, jobs, fmt, out):
    """
    Tabulate recurrence coefficients α_n, β_n for n ≤ NMAX.

    Example:
        opk coeffs --t -10:10:0.25 --lambda 0,0.5,2 --nmax 5
        opk coeffs --family freud6 --t 1 --lambda 0 --nmax 8 --format json
    """
    cfg = build_run_config("coeffs", family, t, lam, nmax, bits, jobs, fmt, out)
    run_table("coeffs", cfg, ctx.obj["verbosity"])


@cli.command()
@grid_options
@click.pass_context
def zeros(ctx, family, t, lam, nmax, bits, jobs, fmt, out):
    """
    Zeros of the degree-NMAX polynomial with enclosure radii and bounds.

    Example:
        opk zeros --t 0 --lambda 0.5 --nmax 6
        opk zeros --family freud6 --t 0 --lambda 0 --nmax 5
    """
    cfg = build_run_config("zeros", family, t, lam, nmax, bits, jobs, fmt, out)
    run_table("zeros", cfg, ctx.obj["verbosity"])


@cli.command()
@grid_options
@click.option("--oracle", is_flag=True, help="Add a quadrature column and the relative deviation")
@click.pass_context
def moments(ctx, family, t, lam, nmax, bits, jobs, fmt, out, oracle):
    """
    Moments μ_k for k ≤ NMAX.

    Example:
        opk moments --t 0 --lambda -0.5 --nmax 4 --oracle
    """
    cfg = build_run_config("moments", family, t, lam, nmax, bits, jobs, fmt, out, oracle=oracle)
    run_table("moments", cfg, ctx.obj["verbosity"])


@cli.command()
@grid_options
@click.option("--only", multiple=True, help="Suites to run (repeatable or comma-separated)")
@click.option("--n", "n_text", help="Index filter N or LO..HI")
@click.pass_context
def verify(ctx, family, t, lam, nmax, bits, jobs, fmt, out, only, n_text):
    """
    Run the verification suites and write the report.

    Without --t and --lambda the standard grid of the family is used.
    Exit code 0 when nothing fails, 1 otherwise.

    Example:
        opk verify --only string --n 1..10
        opk verify --family freud6 --only interlacing --format json -o report.json
    """
    n_range = parse_n_range(n_text) if n_text else None
    cfg = build_run_config("verify", family, t, lam, nmax, bits, jobs, fmt, out,
                           only=only, n_range=n_range)
    try:
        manager = VerificationManager(cfg, levels=get_config().richardson_levels,
                                      verbosity=ctx.obj["verbosity"])
    except ValueError as e:
        raise click.UsageError(str(e))

    report = manager.run()
    ResultWriter(cfg.out, cfg.fmt, output_digits(cfg)).write_report(report)

    statuses = [s.value for s in CheckStatus]
    rows = [[suite] + [counts[s] for s in statuses] for suite, counts in report.suite_summary().items()]
    totals = report.summary()
    rows.append(["total"] + [totals[s] for s in statuses])
    click.echo(click.style("\n=== Verification Summary ===", fg="cyan", bold=True), err=True)
    click.echo(tabulate(rows, headers=["Suite"] + statuses, tablefmt="grid"), err=True)

    if report.passed:
        click.echo(click.style(f"[OK] {totals['total']} check(s), no failures", fg="green"), err=True)
    else:
        click.echo(click.style(f"{totals['fail']} check(s) failed", fg="red"), err=True)
        sys.exit(EXIT_FAIL)


@cli.group()
def config():
    """Manage configuration settings"""
    pass


def internal_key(key: str) -> str:
    name = CONFIG_KEYS.get(key)
    if not name:
        click.echo(click.style(f"Error: Unknown config key '{key}'", fg="red"), err=True)
        click.echo(f"Available keys: {', '.join(CONFIG_KEYS)}", err=True)
        sys.exit(EXIT_USAGE)
    return name


@config.command(name="set")
@click.argument("key")
@click.argument("value")
def config_set(key, value):
    """
    Set a configuration value.

    Example:
        opk config set bits 384
        opk config set n-max 12
    """
    try:
        get_config().set(internal_key(key), value)
    except ConfigError as e:
        fail(str(e), EXIT_USAGE)
    click.echo(click.style(f"[OK] Config updated: {key} = {value}", fg="green"))


@config.command(name="get")
@click.argument("key", required=False)
def config_get(key):
    """
    Get configuration value(s).

    Example:
        opk config get bits
        opk config get
    """
    cfg = get_config()
    if key:
        click.echo(f"{key}: {cfg.get(internal_key(key))}")
        return
    click.echo(click.style("\n=== Configuration ===", fg="cyan", bold=True))
    for cli_key, name in CONFIG_KEYS.items():
        click.echo(f"  {cli_key}: {cfg.get(name)}")
    click.echo()


@config.command(name="reset")
def config_reset():
    """Restore the default configuration"""
    try:
        get_config().reset()
    except ConfigError as e:
        fail(str(e))
    reset_config_instance()
    click.echo(click.style("[OK] Configuration reset to defaults", fg="green"))


def main():
    """Main entry point"""
    cli(obj={})


if __name__ == "__main__":
    main()
