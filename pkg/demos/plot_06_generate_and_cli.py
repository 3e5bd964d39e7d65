"""
Reproducible instances and the command line
===========================================

``generate`` cuts a rectangle out of a freshly completed square, so its
output is always admissible, and the seed alone fixes the result.  The same
commands are available as ``latin-forge`` (or ``python -m latin_forge``).
"""

import json
import subprocess
import sys

from latin_forge import check_admissible, complete, verify_square
from latin_forge.generate import generate_admissible

inst = generate_admissible(6, 8, 3, 3, 4, simple=True, seed=11)
print("rho:", inst.rho, " admissible:", bool(check_admissible(inst, simple=True)))
sq = complete(inst, simple=True)
print("completed and verified:", verify_square(sq, contains=inst, simple_required=True).ok)


def cli(*args):
    p = subprocess.run([sys.executable, "-m", "latin_forge", *args], capture_output=True, text=True)
    return p.returncode, p.stdout


code, out = cli("generate", "--n", "4", "--k", "4", "--lambda", "1", "--r", "2", "--s", "2",
                "--seed", "5")
print("generate ->", code, out.strip())
text = json.dumps(json.loads(out)["instance"])
code, out = cli("complete", "--json", text)
print("complete ->", code, json.loads(out)["verdict"])
code, out = cli("oracle", "--check", "equivalence", "--bounds", "n=2,k=2,lambda=1")
print("oracle   ->", code, json.loads(out)["verdict"], json.loads(out)["count"], "instances")
