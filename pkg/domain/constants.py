ORDER_CEILING = 200_000
NAIVE_ORACLE_MAX_ORDER = 2_000
SCHEMA_VERSION = 1

DEFAULT_J_MAX = 3
DEFAULT_N_MAX = 20

DEFAULT_IDENTITY_ORDER = 300
DEFAULT_HEAVY_IDENTITY_ORDER = 120

LEDGER_FILE_NAME = "diamonds-ledger.jsonl"
LEDGER_ENV_VAR = "DIAMONDS_LEDGER"

# (m^2 - 1, 24) for every m coprime to 6
KAPPA_COPRIME_TO_SIX = 24
