import os

from selfaffine import __version__
from selfaffine.components import data_utils, ids
from selfaffine.components.ifs import theorem2_pipeline

OUTPUT_PATH = os.path.join("data", "golden", "thm2_report.json")

# Default four-map construction at level 8
system = data_utils.load_fixture(ids.FIXTURE_THM2)
report = theorem2_pipeline(0.44, 0.2, 1.0, 8, tol=1e-3)

document = {
    ids.REPORT_SCHEMA: ids.SCHEMA_VERSION,
    ids.REPORT_LIBRARY: __version__,
    ids.REPORT_CONFIG_HASH: data_utils.config_hash(system),
    ids.REPORT_SEED: 0,
    ids.REPORT_LEVEL: 8,
    ids.REPORT_TOLERANCE: 1e-3,
    ids.REPORT_COMMAND: ids.THM2,
    ids.REPORT_RESULT: report.to_dict(),
}

os.makedirs(os.path.dirname(OUTPUT_PATH), exist_ok=True)
data_utils.write_report(document, OUTPUT_PATH)
print("All checks passed" if report.passed else "Some checks failed")
print(f"Report written to {OUTPUT_PATH}")
