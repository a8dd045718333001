"""Run-time settings shared by the cochain and parallel code."""

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Settings:
    degree_cap: int = 3      # highest cochain degree built (C^{cap+1} is still formed for d^cap)
    threads: int = 1         # worker threads for column-wise matrix builds

    @classmethod
    def from_env(cls, env=None):
        """Settings with `threads` taken from OMEGA_PSEUDOALG_THREADS (bad values give 1)."""
        env = os.environ if env is None else env
        try:
            threads = int(env.get("OMEGA_PSEUDOALG_THREADS", ""))
        except ValueError:
            threads = 1
        return cls(threads=max(1, threads))


DEFAULTS = Settings()
