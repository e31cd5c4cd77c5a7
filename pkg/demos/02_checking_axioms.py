# Checking the three axioms on small examples.
from ternary_schemes import (
    ASTCandidate,
    AxiomViolation,
    check_coordinate_closure,
    check_regularity,
    nontrivial_domain,
    validate_ast,
)
from ternary_schemes.reproduction import full_domain_scheme, load_listing

# One nontrivial relation holding every all-distinct triple always works.
x = full_domain_scheme(3)
report = validate_ast(x)
print("full domain, n=3:", report.passed, "valencies", report.valencies.tolist())

# Splitting off a single triple breaks valency first.
dom = list(nontrivial_domain(4))
bad = ASTCandidate.from_blocks(4, [[(1, 2, 3)], dom[1:]])
report = validate_ast(bad)
print("split n=4:", report.failed_check, "->", report.failure)

# The other checks can be asked for directly; each raises with a witness.
try:
    check_regularity(bad)
except AxiomViolation as exc:
    print("regularity:", exc)

# The shipped n=4 listing with two nontrivial relations is an AST.
y = load_listing("listing_n4_m5.txt")
t = check_regularity(y)
print("n=4 listing tensor shape", t.shape, "nonzero cells", int((t > 0).sum()))

# Row s of the coordinate table says where sigma_s sends R0..Rm.
table = check_coordinate_closure(y)
for row in table:
    print("  ", row.tolist())
