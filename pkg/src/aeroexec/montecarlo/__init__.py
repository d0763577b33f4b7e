from .campaign import (
    FIG6_BINS,
    TABLE1_MATRIX,
    CampaignReport,
    build_fig6_trials,
    build_table1_trials,
    run_campaign,
    write_reports,
)
from .plans import generate_mission_plan, replay_plan
from .trial import (
    CLASSIFICATIONS,
    COMPLETED,
    CRASH,
    EMERGENCY_LANDING,
    TIMEOUT,
    TrialOutcome,
    TrialSpec,
    VerifyReport,
    classify,
    run_trial,
    verify_trial,
)

__all__ = [
    "CLASSIFICATIONS",
    "COMPLETED",
    "CRASH",
    "CampaignReport",
    "EMERGENCY_LANDING",
    "FIG6_BINS",
    "TABLE1_MATRIX",
    "TIMEOUT",
    "TrialOutcome",
    "TrialSpec",
    "VerifyReport",
    "build_fig6_trials",
    "build_table1_trials",
    "classify",
    "generate_mission_plan",
    "replay_plan",
    "run_campaign",
    "run_trial",
    "verify_trial",
    "write_reports",
]
