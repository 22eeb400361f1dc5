"""CLI interface for Casino Wager Lab."""

from __future__ import annotations

import functools
import logging
import time
from fractions import Fraction
from pathlib import Path

import click
import pandas as pd
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from casino_wager_lab import __version__
from casino_wager_lab.cache import CacheManager
from casino_wager_lab.config import Config
from casino_wager_lab.core import check_bounds
from casino_wager_lab.errors import WagerLabError
from casino_wager_lab.experiments import leigh, reference
from casino_wager_lab.experiments.models import (
    CrapsSummary,
    LeighSummary,
    RouletteSummary,
    RunManifest,
    TcpSummary,
)
from casino_wager_lab.games import craps, roulette, three_card_poker as tcp
from casino_wager_lab.rng import UINT64_LIMIT, derive_stream, load_script_numbers, purpose_id
from casino_wager_lab.systems.labouchere import LabConfig, load_outcome_script, run_scenario
from casino_wager_lab.systems.martingale import FlatStake, Martingale

console = Console()
logger = logging.getLogger(__name__)

EXIT_RUNTIME_ERROR = 3
SEED = click.IntRange(0, UINT64_LIMIT - 1)


def _get_config() -> Config:
    return Config.from_env()


def _fmt_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator} ({float(q):.9g})"


def _handle_errors(func):
    """Report package errors in red and exit with the runtime error code."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ValidationError as e:
            raise click.UsageError(str(e)) from e
        except WagerLabError as e:
            console.print(f"[red]Error: {e}[/red]")
            raise SystemExit(EXIT_RUNTIME_ERROR) from e

    return wrapper


def _write_frame(df: pd.DataFrame, path: Path) -> None:
    df.to_csv(path, index=False)
    logger.info(f"Wrote {len(df)} rows to {path}")


def _write_json(payload: str, path: Path) -> None:
    path.write_text(payload + "\n")
    logger.info(f"Wrote {path}")


def _out_dir(out: str | None, config: Config) -> Path:
    path = Path(out or config.out_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _stake_policy(system: str, limit: int | None):
    if system == "martingale":
        return Martingale(limit=limit)
    return FlatStake(1)


@click.group()
@click.version_option(__version__)
@click.option("--verbose", "-v", is_flag=True, help="Log progress to stderr")
def main(verbose: bool):
    """Casino Wager Lab - wager ratios, betting systems and the Leigh experiment."""
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


@main.command(name="leigh")
@click.option("--replications", "-n", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--seed", type=SEED, default=None, help="Master seed (default $WAGER_LAB_SEED)")
@click.option("--days", type=click.IntRange(min=1), default=8, show_default=True)
@click.option("--coups-per-day", type=click.IntRange(min=1), default=360, show_default=True)
@click.option("--min-bet", type=click.IntRange(min=0), default=5, show_default=True)
@click.option("--max-bet", type=click.IntRange(min=1), default=2600, show_default=True)
@click.option("--mu1", type=click.FloatRange(min=0, min_open=True), default=leigh.DEFAULT_MU1, show_default=True)
@click.option("--workers", "-w", type=click.IntRange(min=1), default=None, help="Worker processes (default: all cores)")
@click.option("--out", "-o", type=click.Path(file_okay=False), default=None, help="Output directory")
@click.option("--no-cache", is_flag=True, help="Ignore and do not write cached session rows")
@_handle_errors
def leigh_cmd(replications, seed, days, coups_per_day, min_bet, max_bet, mu1, workers, out, no_cache):
    """Replicate the eight-day Leigh session and summarise it."""
    config = _get_config()
    seed = config.master_seed if seed is None else seed
    workers = workers or config.workers
    session = leigh.SessionConfig(
        days=days,
        coups_per_day=coups_per_day,
        lab=LabConfig(min_bet=min_bet, max_bet=max_bet),
    )
    cache = None if no_cache else CacheManager(config.cache_dir, config.cache_ttl_seconds)
    cache_hit = cache is not None and cache.is_cached(
        leigh.EXPERIMENT_ID, leigh.cache_params(seed, replications, session)
    )

    started = time.perf_counter()
    agg = leigh.run_experiment(seed, replications, session, workers, config.chunk_size, cache)
    report = leigh.poisson_report(agg, mu1)
    summary = leigh.summarize(agg, report, session)
    elapsed = time.perf_counter() - started

    out_dir = _out_dir(out, config)
    outputs = ["summary.json", "histogram.csv", "n_distribution.csv", "manifest.json"]
    _write_json(summary.model_dump_json(indent=2), out_dir / "summary.json")
    _write_frame(agg.histogram.to_frame(), out_dir / "histogram.csv")
    _write_frame(leigh.n_distribution_frame(report), out_dir / "n_distribution.csv")
    manifest = RunManifest(
        command="leigh",
        config={**session.model_dump(mode="json"), "replications": replications, "mu1": mu1},
        master_seed=seed,
        version=__version__,
        workers=workers,
        wall_time_seconds=round(elapsed, 3),
        cache_hit=cache_hit,
        outputs=outputs,
    )
    _write_json(manifest.model_dump_json(indent=2), out_dir / "manifest.json")

    table = Table(title=f"Leigh system, {replications} sessions of {days} x {coups_per_day} coups")
    table.add_column("Statistic", style="cyan")
    table.add_column("Mean", justify="right")
    table.add_column("SE", justify="right", style="dim")
    for name in ("n_winning", "sum_winning", "n_losing", "sum_losing", "n_incomplete", "sum_incomplete", "total_bet"):
        table.add_row(name, f"{agg.mean(name):,.6f}", f"{agg.se(name):.6f}")
    table.add_row("p_profitable", f"{summary.p_profitable:.6f}", f"{summary.p_profitable_se:.6f}")
    console.print(table)
    console.print(f"Consistency ratio: {summary.consistency_ratio:.7f} (limit {-1 / 74:.7f})")
    console.print(f"Largest N: {summary.max_n_winning}; log10 P(Poisson({mu1}) >= 27) = {summary.log10_tail27:.3f}")
    if report.violations:
        console.print(f"[yellow]Poisson({mu1}) bound exceeded at n = {report.violations}[/yellow]")
    console.print(f"[dim]Outputs in {out_dir}[/dim]")


@main.command()
@click.argument("script_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--pockets", is_flag=True, help="Script holds pocket numbers 0-36 instead of W/T/L")
@click.option("--chance", type=click.Choice([c.value for c in roulette.EvenChance]), default="red", show_default=True)
@click.option("--min-bet", type=click.IntRange(min=0), default=5, show_default=True)
@click.option("--max-bet", type=click.IntRange(min=1), default=2600, show_default=True)
@click.option("--trace/--no-trace", default=True, help="Print every coup")
@_handle_errors
def scenario(script_file, pockets, chance, min_bet, max_bet, trace):
    """Play a scripted outcome sequence with one reverse Labouchere bettor."""
    if pockets:
        target = roulette.EvenChance(chance)
        coups = roulette.coups_from_pockets(load_script_numbers(script_file))
        outcomes = [coup.outcome(target) for coup in coups]
    else:
        outcomes = load_outcome_script(script_file)
    report = run_scenario(outcomes, LabConfig(min_bet=min_bet, max_bet=max_bet))

    if trace:
        table = Table(title=f"{len(outcomes)} coups")
        table.add_column("Coup", justify="right")
        table.add_column("List before")
        table.add_column("Bet", justify="right")
        table.add_column("Result")
        table.add_column("List after")
        table.add_column("f_sys", justify="right")
        table.add_column("f_act", justify="right")
        for row in report.trace:
            bet = f"({row.bet})" if row.virtual else str(row.bet)
            table.add_row(
                str(row.coup),
                " ".join(map(str, row.terms_before)),
                bet,
                row.outcome.name,
                " ".join(map(str, row.terms_after)),
                str(row.f_sys),
                str(row.f_act),
            )
        console.print(table)

    summary = Table(title="Progressions")
    summary.add_column("#", justify="right")
    summary.add_column("Kind", style="bold")
    summary.add_column("Coups", justify="right")
    summary.add_column("Amount (sys)", justify="right")
    summary.add_column("Amount (act)", justify="right")
    summary.add_column("Final list")
    for i, p in enumerate(report.progressions, start=1):
        summary.add_row(
            str(i), p.kind.value, str(p.coups), str(p.amount_sys), str(p.amount_act), " ".join(map(str, p.final_terms))
        )
    console.print(summary)
    console.print(f"Total staked: {report.total_staked}")


_TCP_STRATEGIES = {
    "optimal": tcp.tcp_strategy,
    "always-play": tcp.always_play,
    "always-fold": tcp.always_fold,
}


@main.command(name="tcp")
@click.option(
    "--strategy",
    type=click.Choice([*_TCP_STRATEGIES, "threshold"]),
    default="optimal",
    show_default=True,
)
@click.option("--threshold", "threshold_hand", default=None, help="Weakest hand played, e.g. Q-6-3")
@click.option("--no-reduce", is_flag=True, help="Enumerate every gambler hand instead of suit classes")
@click.option("--simulate", type=click.IntRange(min=0), default=0, help="Also simulate this many coups")
@click.option("--players", type=click.IntRange(1, 16), default=1, show_default=True)
@click.option("--seed", type=SEED, default=None)
@click.option("--out", "-o", type=click.Path(file_okay=False), default=None)
@_handle_errors
def tcp_cmd(strategy, threshold_hand, no_reduce, simulate, players, seed, out):
    """Exact Three Card Poker ante-play analysis."""
    if strategy == "threshold":
        if not threshold_hand:
            raise click.UsageError("--strategy threshold needs --threshold HAND")
        rule = tcp.ThresholdStrategy(tcp.parse_threshold(threshold_hand))
    else:
        rule = _TCP_STRATEGIES[strategy]
    config = _get_config()
    seed = config.master_seed if seed is None else seed

    analysis = tcp.tcp_exact(rule, reduce_suits=not no_reduce)
    label = strategy if strategy != "threshold" else f"threshold {threshold_hand}"
    table = Table(title=f"Three Card Poker, {label}")
    table.add_column("Quantity", style="cyan")
    table.add_column("Exact value", justify="right")
    table.add_row("E[total bet]", _fmt_fraction(analysis.e_bet))
    table.add_row("E[profit]", _fmt_fraction(analysis.e_profit))
    table.add_row("HA (per total bet)", _fmt_fraction(analysis.ha_total))
    table.add_row("HA (per ante)", _fmt_fraction(analysis.ha_base))
    table.add_row("P(fold)", _fmt_fraction(analysis.fold_fraction))

    simulated_ratio = None
    if simulate:
        ratio = tcp.simulate_tcp(derive_stream(seed, purpose_id("tcp")), simulate, rule, players)
        simulated_ratio = ratio.profit_ratio
        table.add_row(f"Simulated ratio ({simulate} coups)", f"{simulated_ratio:.6f}")
    console.print(table)

    summary = TcpSummary(
        strategy=label,
        reduce_suits=not no_reduce,
        e_bet=str(analysis.e_bet),
        e_profit=str(analysis.e_profit),
        ha_total=str(analysis.ha_total),
        ha_base=str(analysis.ha_base),
        fold_fraction=str(analysis.fold_fraction),
        ha_total_float=float(analysis.ha_total),
        seed=seed,
        players=players,
        simulated_coups=simulate,
        simulated_profit_ratio=simulated_ratio,
    )
    out_dir = _out_dir(out, config)
    _write_json(summary.model_dump_json(indent=2), out_dir / "tcp_summary.json")


@main.command(name="craps")
@click.option("--rounds", type=click.IntRange(min=1), default=100_000, show_default=True)
@click.option("--odds", type=click.Choice([o.value for o in craps.OddsPolicy]), default="345", show_default=True)
@click.option("--system", "stake_system", type=click.Choice(["flat", "martingale"]), default="flat", show_default=True)
@click.option("--limit", type=click.IntRange(min=1), default=None, help="Martingale stake limit; rounds need one")
@click.option("--seed", type=SEED, default=None)
@click.option("--out", "-o", type=click.Path(file_okay=False), default=None)
@_handle_errors
def craps_cmd(rounds, odds, stake_system, limit, seed, out):
    """Pass-line analysis and seven-out round simulation."""
    config = _get_config()
    seed = config.master_seed if seed is None else seed
    policy = craps.OddsPolicy(odds)
    analysis = craps.craps_exact(policy)
    stake = _stake_policy(stake_system, limit)
    run = craps.craps_run_rounds(derive_stream(seed, purpose_id("craps")), rounds, policy, stake)

    table = Table(title=f"Craps pass line, odds {odds}")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", justify="right")
    table.add_row("E[total bet]", _fmt_fraction(analysis.e_bet))
    table.add_row("E[profit]", _fmt_fraction(analysis.e_profit))
    table.add_row("HA (per total bet)", _fmt_fraction(analysis.ha_total))
    table.add_row("HA (per pass-line bet)", _fmt_fraction(analysis.ha_base))
    table.add_row("P(pass wins)", _fmt_fraction(analysis.p_win))
    table.add_row("Rounds", str(rounds))
    table.add_row("Round profit ratio", f"{run.ratio.profit_ratio:.6f}")
    table.add_row("Decision profit ratio", f"{run.decision_ratio.profit_ratio:.6f}")
    table.add_row("Mean round length", f"{run.rounds['length'].mean():.4f}")
    table.add_row("Mean squared round length", f"{run.mean_square_length:.4f}")
    console.print(table)

    out_dir = _out_dir(out, config)
    _write_frame(run.rounds, out_dir / "craps_rounds.csv")
    _write_frame(run.ratio_trace(), out_dir / "craps_trace.csv")
    summary = CrapsSummary(
        odds=odds,
        system=stake_system,
        limit=limit,
        seed=seed,
        rounds=rounds,
        e_bet=str(analysis.e_bet),
        e_profit=str(analysis.e_profit),
        ha_total=str(analysis.ha_total),
        ha_base=str(analysis.ha_base),
        round_profit_ratio=run.ratio.profit_ratio,
        decision_profit_ratio=run.decision_ratio.profit_ratio,
        mean_square_length=run.mean_square_length,
    )
    _write_json(summary.model_dump_json(indent=2), out_dir / "craps_summary.json")


@main.command(name="roulette")
@click.option("--coups", type=click.IntRange(min=1), default=100_000, show_default=True)
@click.option("--mode", type=click.Choice([m.value for m in roulette.SettlementMode]), default="enprison", show_default=True)
@click.option("--bets", default="red", show_default=True, help="Bet mix, e.g. red:1,17:1,1+2+3:5")
@click.option("--system", "stake_system", type=click.Choice(["flat", "martingale"]), default="flat", show_default=True)
@click.option("--limit", type=click.IntRange(min=1), default=None, help="Martingale stake limit (none: unlimited)")
@click.option("--burn-in", type=click.IntRange(min=0), default=None, help="Coups ignored by the ratio bound check")
@click.option("--tol-se", type=click.FloatRange(min=0), default=3.0, show_default=True, help="Bracket slack in standard errors")
@click.option("--seed", type=SEED, default=None)
@click.option("--out", "-o", type=click.Path(file_okay=False), default=None)
@_handle_errors
def roulette_cmd(coups, mode, bets, stake_system, limit, burn_in, tol_se, seed, out):
    """Simulate a bet mix and check its profit ratio against the house-advantage bracket."""
    config = _get_config()
    seed = config.master_seed if seed is None else seed
    settlement = roulette.SettlementMode(mode)
    bet_specs = roulette.parse_bets(bets)
    stake = _stake_policy(stake_system, limit)
    run = roulette.simulate_roulette(
        derive_stream(seed, purpose_id("roulette")), coups, bet_specs, settlement, stake
    )
    spec = roulette.bound_spec_for(bet_specs, settlement)
    ratios = run.trace["ratio_x"].tolist()
    burn_in = coups // 2 if burn_in is None else min(burn_in, coups - 1)
    # Trace rows sit at logarithmic checkpoints; skip those taken within the burn-in.
    skip = min(int((run.trace["coup"] <= burn_in).sum()), len(ratios) - 1)
    bounds = check_bounds(ratios, spec, skip, tol_se * run.ratio_stderr())

    table = Table(title=f"Roulette, {coups} coups, {mode}")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", justify="right")
    table.add_row("Bets", ", ".join(str(b) for b in bet_specs))
    table.add_row("Profit ratio", f"{run.ratio.profit_ratio:.6f} +/- {run.ratio_stderr():.6f}")
    table.add_row("Bracket", f"[{_fmt_fraction(spec.chi_lo)}, {_fmt_fraction(spec.chi_hi)}]")
    table.add_row("Mean spins per coup", f"{run.mean_spins:.5f}")
    table.add_row(f"Bound check ({tol_se:g} SE)", "[green]pass[/green]" if bounds.passed else "[red]fail[/red]")
    if stake.max_stake is None:
        table.add_row("Positive after every win", str(run.positive_after_every_win))
    console.print(table)

    out_dir = _out_dir(out, config)
    _write_frame(run.trace, out_dir / "roulette_trace.csv")
    summary = RouletteSummary(
        mode=mode,
        bets=[str(b) for b in bet_specs],
        system=stake_system,
        limit=limit,
        seed=seed,
        coups=coups,
        spins=run.spins,
        profit_ratio=run.ratio.profit_ratio,
        profit_ratio_se=run.ratio_stderr(),
        chi_lo=str(spec.chi_lo),
        chi_hi=str(spec.chi_hi),
        burn_in=burn_in,
        tol_se=tol_se,
        bound_check_passed=bounds.passed,
    )
    _write_json(summary.model_dump_json(indent=2), out_dir / "roulette_summary.json")


@main.command(name="reference")
@click.option("--summary", "summary_path", type=click.Path(exists=True, dir_okay=False), default=None, help="summary.json of a leigh run to compare")
@_handle_errors
def reference_cmd(summary_path):
    """Show the reported winning progressions next to simulated statistics."""
    ref = reference.load_reference()
    table = Table(title=f"{len(ref.progressions)} reported winning progressions")
    table.add_column("Day", justify="right")
    table.add_column("No.", justify="right")
    table.add_column("Bettor", style="bold")
    table.add_column("Chance")
    table.add_column("Amount", justify="right")
    for p in ref.progressions:
        table.add_row(str(p.day), str(p.number), p.bettor, p.chance or "?", f"{p.amount:,}" if p.amount else "?")
    console.print(table)

    days = Table(title="Day subtotals")
    for col in ("day", "progressions", "listed", "subtotal", "unlisted"):
        days.add_column(col, justify="right")
    for row in reference.day_totals(ref).itertuples(index=False):
        days.add_row(str(row.day), str(row.progressions), f"{int(row.listed):,}", f"{row.subtotal:,}", f"{row.unlisted:,}")
    console.print(days)
    console.print(f"Total won: {ref.total_won:,}")

    summary = None
    if summary_path:
        summary = LeighSummary.model_validate_json(Path(summary_path).read_text())
    cmp = reference.comparison(summary, ref)
    stats = Table(title="Simulation estimates")
    stats.add_column("Statistic", style="cyan")
    stats.add_column("Published", justify="right")
    stats.add_column("Reported", justify="right")
    if summary is not None:
        stats.add_column("This run", justify="right")
    for row in cmp.itertuples(index=False):
        cells = [row.statistic, f"{row.published:,.6f}", "N.A." if pd.isna(row.reported) else f"{row.reported:,.1f}"]
        if summary is not None:
            cells.append("" if pd.isna(row.this_run) else f"{row.this_run:,.6f}")
        stats.add_row(*cells)
    console.print(stats)
    tail = reference.observed_tail_probability(leigh.DEFAULT_MU1, ref)
    console.print(f"P(Poisson({leigh.DEFAULT_MU1}) >= {len(ref.progressions)}) = {tail:.3e}")


@main.command()
@click.option("--clear", is_flag=True, help="Remove every cached result")
def cache(clear: bool):
    """Show cache statistics."""
    config = _get_config()
    cm = CacheManager(config.cache_dir, config.cache_ttl_seconds)
    if clear:
        removed = cm.clear()
        console.print(f"Removed {removed} cached entries.")
        return
    stats = cm.stats()

    console.print(f"Cache directory: {stats['cache_dir']}")
    console.print(f"Total entries: {stats['total_entries']}")
    console.print(f"Total size: {stats['total_size_mb']} MB")
    console.print(f"Unique experiments: {stats['unique_experiments']}")
    console.print(f"Cached session rows: {stats['total_rows']:,}")


if __name__ == "__main__":
    main()
