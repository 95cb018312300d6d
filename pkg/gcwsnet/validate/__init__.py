"""Monte Carlo verification of the hashing and sketching laws."""

from gcwsnet.validate.checks import (
    check_bbit_collision,
    check_countsketch,
    check_countsketch_conditional,
    check_exact_collision,
    check_nrff,
    check_zero_bit,
)
from gcwsnet.validate.models import (
    SE_BAND,
    McReport,
    MeanCriterion,
    Verdict,
    family_se_band,
    summarize,
)
from gcwsnet.validate.moments import RunningMoments
from gcwsnet.validate.pairs import random_pair
from gcwsnet.validate.suite import SUITES, run_suite

__all__ = [
    "McReport",
    "MeanCriterion",
    "Verdict",
    "SE_BAND",
    "family_se_band",
    "summarize",
    "RunningMoments",
    "random_pair",
    "check_exact_collision",
    "check_bbit_collision",
    "check_zero_bit",
    "check_countsketch",
    "check_countsketch_conditional",
    "check_nrff",
    "SUITES",
    "run_suite",
]
