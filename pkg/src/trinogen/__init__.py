"""Lucas-sequence periods, k-Wall-Sun-Sun primes and monogenicity of
x^(2s^n) - k x^(s^n) - 1."""

from trinogen._backend import BACKEND
from trinogen.lucas import LucasParams, period, wss_sieve, wss_test
from trinogen.monogenic import family_report, monogenicity_report, verify_main_theorem
from trinogen.polyfp import Trinomial, swan_discriminant
from trinogen.quadfield import field_data, main1_congruence, unit_order

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "LucasParams",
    "Trinomial",
    "family_report",
    "field_data",
    "main1_congruence",
    "monogenicity_report",
    "period",
    "swan_discriminant",
    "unit_order",
    "verify_main_theorem",
    "wss_sieve",
    "wss_test",
]
