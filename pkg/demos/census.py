"""Enumerate every cover rule on the two-arrow quiver and print the census.

The quiver has objects x, y and parallel arrows f, g: x -> y. Four rules
satisfy the cover axioms; the table lists each rule's minimum covering
sieve per object and the torsion / torsion-free classes it induces.
"""
from finsite.cli import run


def main() -> None:
    for argv in (
        ["topology", "enumerate", "--category", "quiver2"],
        ["topology", "enumerate", "--category", "chain3"],
    ):
        code, text = run(argv)
        assert code == 0
        print(text)


if __name__ == "__main__":
    main()
