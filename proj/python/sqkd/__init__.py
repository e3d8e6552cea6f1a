# Copyright 2026 The sqkd-rate Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Key-rate bounds and Monte Carlo simulation for semi-quantum key distribution."""

from ._sqkd import (
    AbortError,
    ChannelStatistics,
    CollectiveAttack,
    InsufficientData,
    InvalidArgument,
    KeyRateReport,
    SqkdError,
    StatisticsEstimate,
    exact_collective_rate,
    identity_attack,
    key_rate_bound,
    noise_threshold,
    overlap_e000_e131,
    random_attack,
    random_weak_attack,
    read_stats_file,
    rho_BE,
    rho_BEC,
    simulate,
    statistics,
    sweep,
    symmetric_realizing_attack,
    symmetric_stats,
    write_stats_file,
    z_measure_attack,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
