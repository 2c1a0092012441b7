from decorators.errors import exit_on_error
from decorators.options import monte_carlo_options, seed_option, threads_option
