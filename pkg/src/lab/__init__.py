from lab.bootstrap import BootstrapRow, bootstrap_study
from lab.consistency import ConsistencyRow, empirical_consistency_check
from lab.critical import CriticalValueTable, resolve_table, tabulate_critical, tabulate_table
from lab.distributions import DistributionSpec, Family, sample
from lab.power import PowerResult, power_study
from lab.rng import RngStream, StreamPurpose
from lab.scenario import ScenarioSpec, load_scenarios
