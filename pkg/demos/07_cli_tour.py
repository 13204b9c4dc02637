"""
Command line tour
=================
"""

# Every library layer is reachable from the `ncfps` entry point; this
# script drives the same main() in process and shows each command line.

from ncfps.cli import main

COMMANDS = [
    ["expand", "x0 shuffle x1"],
    ["star", "x0.x1", "--max-length", "6"],
    ["op", "stuffle", "y1*", "y2*", "--max-length", "4"],
    ["bases", "--max-length", "2"],
    ["classify", "(x0.x1)*"],
    ["check-identity", "(-1*x0.x1)* shuffle (x0.x1)*", "(-4*x0.x0.x1.x1)*"],
    ["chen", "--inputs", "x0=1/z,x1=1/(1-z)", "--z0", "0", "--z", "1/2", "--max-length", "2"],
    ["pair", "x1*", "--inputs", "x1=1/(1-z)", "--z0", "0", "--z", "1/2"],
    ["derive-ode", "(x0.x1)*", "--inputs", "x0=1/z,x1=1/(1-z)"],
]

for argv in COMMANDS:
    print("$ ncfps " + " ".join(a if " " not in a else repr(a) for a in argv))
    code = main(argv)
    print(f"(exit {code})")
    print()
