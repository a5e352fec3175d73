# %% [markdown]
# # Command-line walkthrough
#
# Every subcommand is also reachable in-process through ``tfg.cli.run``,
# which returns the exit code and the rendered payload.

# %%
import json
import tempfile
from pathlib import Path

from tfg.cli import run

configs = Path(__file__).resolve().parent / "configs"

for argv in (
    ["genus", "--config", str(configs / "cfg_2_3.json"), "--format", "pretty"],
    ["delta-max", "-r", "1", "-m", "2", "-n", "3"],
    ["enumerate", "--rm", "3", "--rn", "3", "--families", "--format", "pretty"],
    ["c2", "--config", str(configs / "family_2_2.json"), "--d-range", "1..6", "--format", "csv"],
    ["emit", "--row", "9"],
    ["verify-tables", "--table", "prop2.12", "--format", "pretty"],
):
    out = run(argv)
    print("$ tfg", " ".join(argv[:3]), "...", f"(exit {out.exit_code})")
    print(out.payload, "\n")

# %% [markdown]
# A cached run returns the same bytes as a cold one.

# %%
with tempfile.TemporaryDirectory() as tmp:
    argv = ["enumerate", "--rm", "6", "--rn", "12", "--cache-dir", tmp]
    cold, warm = run(argv), run(argv)
    print(cold.payload == warm.payload, len(json.loads(warm.payload)), "classes")
