"""The rank-sequence calculus for the graded injection category.

On the category of finite sets with injections, truncated or not, every
sieve on an object is ranked: it collects the morphisms whose image
misses at least rank-many fresh points. A cover rule is then a sequence
of per-object rank suprema, and the axioms become a one-step recurrence
on that sequence. Everything here runs symbolically and is then grounded
on an honest finite truncation.
"""
from finsite import typen


def main() -> None:
    spec = typen.make_spec("generic", (1, 1, 0), tail=0)
    seq = typen.d_sequence(spec, 8)
    print("spec", typen.spec_to_doc(spec))
    print("rank sequence", tuple(typen.d_fmt(v) for v in seq))
    outcome = typen.validate_spec(spec)
    print(f"valid={outcome.valid} via recurrence={outcome.recurrence_ok} "
          f"and piece decomposition={outcome.pieces_ok}")
    print(f"rigid={typen.rigid_spec(spec)} "
          f"irreducibles below 6: {typen.irreducible_set(spec, 6)}")

    census = typen.spec_census(4)
    print(f"\ncensus at horizon 4: {len(census.generic)} generic, "
          f"{len(census.nongeneric)} nongeneric")

    sym = typen.symbolic_pullback(2, 1, deg=2)
    print(f"pull the rank-1 sieve on 2 back along a degree-2 morphism: "
          f"S({sym.n}, {sym.rank})")

    for horizon in (2, 3, 4):
        rep = typen.truncation_crosscheck(spec, horizon)
        print(f"truncation at {horizon}: inventory={rep.sieve_inventory_ok} "
              f"pullbacks={rep.pullback_agreement_ok} "
              f"stability={rep.stability_ok} "
              f"transitivity={rep.transitivity}")


if __name__ == "__main__":
    main()
