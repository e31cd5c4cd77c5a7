# A two-transitive group hands over an AST for free: its orbits on the cube.
from ternary_schemes import (
    ConstructionError,
    Permutation,
    ast_from_group_orbits,
    check_coordinate_closure,
    cyclic_group,
    group_from_generators,
    is_circulant,
    is_symmetric,
    orbit_key,
)
from ternary_schemes.reproduction import load_listing

# x -> x + 1 and x -> 2x on Z/5, written on the labels 1..5.
agl = group_from_generators(5, [Permutation.from_cycles(5, [(1, 2, 3, 4, 5)]),
                                Permutation.from_cycles(5, [(1, 2, 4, 3)])])
print("group order", agl.order)

x = ast_from_group_orbits(agl, 5)
print("relations:", len(x.relations), "sizes", [len(r) for r in x.relations])

# It is the same class as the shipped cyclic listing.
listing = load_listing("listing_n5_m6.txt")
print("isomorphic to listing:", orbit_key(x)[0] == orbit_key(listing)[0])

table = check_coordinate_closure(x)
print("symmetric:", is_symmetric(x, table), " circulant:", is_circulant(x))

# A 4-cycle is transitive but not two-transitive, so R1 already splits.
try:
    ast_from_group_orbits(cyclic_group(4), 4)
except ConstructionError as exc:
    print("C4:", exc)
