"""Drive the command-line interface end to end in a temporary directory.

simulate -> segment (4 parallel jobs) -> evaluate -> bench, the same flow a
shell user would run:

    segscan simulate --kind short --snr 2.0 --seed 0 --outdir suite/
    segscan segment suite/profile_*.txt --output segments/ --jobs 4
    segscan evaluate --truth suite/truth.tsv --pred-dir segments/
    segscan bench --suite suite/ --repetitions 3

Run with:

    python demos/04_cli_workflow.py
"""

import tempfile
from pathlib import Path

from segscan.cli import main

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    suite = tmp / "suite"
    segments = tmp / "segments"

    print("$ segscan simulate --kind short --snr 2.0 --seed 0 --outdir suite/")
    assert main(["simulate", "--kind", "short", "--snr", "2.0", "--seed", "0",
                 "--outdir", str(suite)]) == 0
    print("  wrote:", ", ".join(sorted(p.name for p in suite.iterdir())[:4]), "...")

    inputs = sorted(str(p) for p in suite.glob("profile_*.txt"))
    print("\n$ segscan segment suite/profile_*.txt --output segments/ --jobs 4")
    assert main(["segment", *inputs, "--output", str(segments), "--jobs", "4"]) == 0
    table = (segments / "profile_00.segments.tsv").read_text().splitlines()
    print("  profile_00 segment table, first rows:")
    for line in table[:5]:
        print("   ", line)

    print("\n$ segscan evaluate --truth suite/truth.tsv --pred-dir segments/")
    report = tmp / "report.tsv"
    assert main(["evaluate", "--truth", str(suite / "truth.tsv"),
                 "--pred-dir", str(segments), "--output", str(report)]) == 0
    for line in report.read_text().splitlines():
        print("   ", line)

    print("\n$ segscan bench --suite suite/ --repetitions 3")
    times = tmp / "times.tsv"
    assert main(["bench", "--suite", str(suite), "--repetitions", "3",
                 "--output", str(times)]) == 0
    lines = times.read_text().splitlines()
    for line in lines[:3] + ["..."] + lines[-1:]:
        print("   ", line)
