"""Game engines: roulette, craps and Three Card Poker."""

from casino_wager_lab.games.craps import (
    CrapsDecision,
    CrapsRound,
    OddsPolicy,
    craps_exact,
    craps_pass_decision,
    craps_roll,
    craps_run_rounds,
    simulate_pass_line,
)
from casino_wager_lab.games.roulette import (
    BetSpec,
    CoupResult,
    EvenChance,
    Pocket,
    SettlementMode,
    even_chance_block,
    resolve_coup,
    settle_bet,
    simulate_roulette,
    spin,
)
from casino_wager_lab.games.three_card_poker import (
    Card,
    HandClass,
    TcpAnalysis,
    parse_hand,
    simulate_tcp,
    tcp_exact,
    tcp_rank,
    tcp_strategy,
)

__all__ = [
    "BetSpec",
    "Card",
    "CoupResult",
    "CrapsDecision",
    "CrapsRound",
    "EvenChance",
    "HandClass",
    "OddsPolicy",
    "Pocket",
    "SettlementMode",
    "TcpAnalysis",
    "craps_exact",
    "craps_pass_decision",
    "craps_roll",
    "craps_run_rounds",
    "even_chance_block",
    "parse_hand",
    "resolve_coup",
    "settle_bet",
    "simulate_pass_line",
    "simulate_roulette",
    "simulate_tcp",
    "spin",
    "tcp_exact",
    "tcp_rank",
    "tcp_strategy",
]
