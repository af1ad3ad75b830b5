"""Run every claim check and save the JSON report.

Equivalent CLI:  signrank verify --seed 0 --trials 100 --json report.json
"""
import sys

from signrank import SampleConfig, verify_paper_claims

report = verify_paper_claims(SampleConfig(seed=0, trials=100, magnitude=10))
print(report.table())
path = sys.argv[1] if len(sys.argv) > 1 else "report.json"
with open(path, "w", encoding="utf-8") as fh:
    fh.write(report.to_json())
print("report written to", path)
