"""Analytics over ranked author listings: kappa, correlations, summaries.

Three bundled listings (mathematics, biostatistics, physics) each carry ten
rows of (rank, total citations, h index, most-cited-paper citations).  The
report computes kappa = N/h^2 per author, the mean and sample standard
deviation of h, and two Pearson correlations: rho1 between total citations
and h, rho2 between h and the best paper.  The same analysis runs on any
CSV with the right header, from the library or from the command line.
"""

import pathlib
import subprocess
import sys
import tempfile

from citechain import scientometrics as sm

print("=== bundled listings ===")
for name in sm.FIXTURE_NAMES:
    records = sm.load_dataset(name)
    table = sm.report(records)
    print(f"  {name}")
    print(f"    h: mean = {table.h_mean:.1f}, sample sd = {table.h_sample_sd:.2f}")
    print(f"    rho1 (citations vs h) = {table.rho1:+.4f}   "
          f"rho2 (h vs best paper) = {table.rho2:+.4f}")
    kappas = "  ".join(f"{k:.2f}" for k in table.kappa)
    print(f"    kappa by rank: {kappas}")
    print(f"    kappa <= 5: {table.kappa_le_5_count}   5 < kappa < 6: {table.kappa_5_6_count}")

print()
print("=== concentration at the top ===")
rows = sm.load_dataset("mathematics")
print(f"  mathematics rank 1 holds {rows[0].total_citations / rows[1].total_citations:.2f}x"
      f" the citations of rank 2")
rows = sm.load_dataset("biostatistics")
print(f"  biostatistics rank 1 holds {rows[0].total_citations / rows[1].total_citations:.2f}x"
      f" the citations of rank 2")

print()
print("=== the same report from a CSV file ===")
with tempfile.TemporaryDirectory() as tmp:
    path = pathlib.Path(tmp) / "listing.csv"
    path.write_text(
        "rank,total_citations,h_index,max_paper_citations\n"
        "1,448557,270,28303\n"
        "2,389184,152,135239\n"
        "3,161459,148,23527\n",
        encoding="utf-8",
    )
    table = sm.report(sm.load_dataset(str(path)))
    print(f"  {path.name}: h mean = {table.h_mean:.1f}, rho1 = {table.rho1:+.4f}")

    print()
    print("=== command-line equivalent ===")
    for argv in (
        ["analyze", "--fixture", "physics", "--format", "csv"],
        ["analyze", "--input", str(path), "--format", "csv"],
    ):
        print(f"  $ citechain {' '.join(argv[:2])} ...")
        out = subprocess.run(
            [sys.executable, "-m", "citechain", *argv],
            capture_output=True, text=True, check=True,
        ).stdout
        for line in out.splitlines()[:4]:
            print(f"    {line}")
        print("    ...")
