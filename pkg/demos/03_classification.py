# Classifying ASTs invariant under a group, and what each pipeline stage removes.
from ternary_schemes import ClassificationJob, classify, cyclic_group, trivial_group
from ternary_schemes.cli import format_summary

# Cyclic group on 5 points: 12 orbits, two classes.
job = ClassificationJob(5, cyclic_group(5))
result = classify(job)
print(format_summary(result, "cyclic:(1,2,3,4,5)"))

for c in result.classes:
    rep = c.representative
    print(f"order {c.order}: {len(c.key)} nontrivial relations, {c.size} relabeled copies")
    for i, r in enumerate(rep.nontrivial, start=4):
        print(f"  R{i}", r.triples()[:5], "...")

# The same job with the isomorphism step first.
legacy = classify(job, legacy=True)
print("same classes:", legacy.class_keys() == result.class_keys())

# The trivial group at n=4, order 5, scans 2^23 - 1 partitions in chunks.
big = classify(ClassificationJob(4, trivial_group(4), orders=5))
s = big.stats[0]
print(f"enumerated {s.enumerated}, valency {s.valency}, closure {s.closure}, asts {s.asts}")
print(f"{big.wall_time:.1f}s")
