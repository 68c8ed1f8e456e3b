"""
Exceptions the command line front end maps onto exit codes.

ValueError subclasses are configuration problems (exit code 2), GuardError
subclasses are runtime guard violations (exit code 3).
"""


class ConfigError(ValueError):
    pass


class BracketError(ValueError):
    pass


class FitError(ValueError):
    pass


class GuardError(RuntimeError):
    pass


class AliasingError(GuardError):
    def __init__(self, kick, edge_population, threshold):
        self.kick = kick
        self.edge_population = edge_population
        self.threshold = threshold
        super().__init__(
            f"Edge population {edge_population:.3e} exceeded the aliasing "
            f"threshold {threshold:.1e} at kick {kick}. Increase m_max."
        )


class CutoffError(GuardError):
    pass
