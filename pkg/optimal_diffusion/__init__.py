# -*- coding: utf-8 -*-
from __future__ import unicode_literals

__version__ = '0.1.0'

from .distributions import (  # noqa: E402
    DistributionSpec, MomentSummary, Support, build, cdf, mixture, moments, pdf
)
from .optimal import (  # noqa: E402
    OptimalProcess, check_variance_mean, check_variance_positivity,
    mixture_tau_concavity, phi1_from_moments, synthesize, variance_at,
    verify_detailed_balance
)
