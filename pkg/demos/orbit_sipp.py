"""Index-prime-to-p covers on the orbit category of S3.

The orbit category has one object per conjugacy class of subgroups. For
a prime p, the rule covering each orbit by its morphisms of index prime
to p is a topology whose irreducible objects are exactly the orbits of
p-subgroups.
"""
from finsite import fincat, topology


def main() -> None:
    table = fincat.symmetric_group_table(3)
    cat, data = fincat.build_orbit_category(table, name="orbit_S3")
    orders = {x: data.order_of[x] for x in cat.objects}
    print(f"objects and stabilizer orders: {orders}")

    for p in (2, 3):
        j = topology.sipp_topology(cat, data, p)
        irr = topology.irreducible_objects(cat, j)
        report = topology.check_axioms(cat, j)
        print(f"\np = {p}: axioms hold = "
              f"{report.maximal_ok and report.stability_ok and report.transitivity_ok}")
        print(f"  irreducibles (the p-subgroup orbits): {irr}")
        print(f"  rigid: {topology.rigidity(cat, j).rigid}")


if __name__ == "__main__":
    main()
