import os

from src.utils.resource_path import resource_path

# Project directories, resolved the same way for source checkouts and PyInstaller bundles
BASE_DIR = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))  # Gets to project root

ASSETS_DIR = resource_path("assets", BASE_DIR)
PROBLEMS_DIR = os.path.join(ASSETS_DIR, "problems")

# Verdict exit codes
EXIT_NONEMPTY = 0
EXIT_EMPTY = 1
EXIT_INPUT_ERROR = 2

# Problem modes accepted by the command line
MODE_ADC = "adc"
MODE_ADC_KEYFREE = "adc-keyfree"
MODE_PROFILE_ADC = "profile-adc"
MODE_ZONAL = "zonal"
MODE_LOCALLY_DIFFERENT = "locally-different"
MODE_LTL = "ltl"
MODE_PRESBURGER = "presburger"
MODES = (
    MODE_ADC,
    MODE_ADC_KEYFREE,
    MODE_PROFILE_ADC,
    MODE_ZONAL,
    MODE_LOCALLY_DIFFERENT,
    MODE_LTL,
    MODE_PRESBURGER,
)

# Profile flags
FLAG_STAR = "*"
FLAG_SAME = "="
FLAG_DIFF = "!"
FLAGS = (FLAG_STAR, FLAG_SAME, FLAG_DIFF)

# Witness concretization
DEFAULT_UNROLL_FACTOR = 3  # --unroll defaults to 3 * (|u| + |v|)
FIRST_DATA_VALUE = 1

# Locally different words need |Sigma| + 3 values per class before they can be rearranged
LOCAL_DIFF_OFFSET = 3

# Presburger engine
ORACLE_HORIZON = 8
ILP_BOUND_CAP = int(os.environ.get("DATAWORDS_ILP_BOUND", "1000000"))
LP_TOLERANCE = 1e-6

# Bounded model search used by tests and the command line cross checks
MODEL_SEARCH_LENGTH = 6
MODEL_SEARCH_VALUES = 4

# LTL
DEFAULT_LETTER = "_"

# Logging
LOG_LEVEL = os.environ.get("DATAWORDS_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = "[%(levelname)s] %(name)s: %(message)s"
