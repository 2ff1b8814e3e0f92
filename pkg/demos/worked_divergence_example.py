"""The agreement score in one picture-free walkthrough.

A reference posterior N(0, 1) is approximated by a candidate prior
N(0.5, 1) and judged against a deliberately vague benchmark prior whose
variance is 900.  The candidate loses far less information than the
benchmark does, so there is no prior-data conflict.
"""

from priorrank import Normal, PosteriorSummary, ExpertPrior, evaluate, kl

posterior = Normal(0.0, 1.0)
candidate = Normal(0.5, 1.0)
benchmark = Normal(0.0, 30.0)  # variance 900

num = kl(posterior, candidate)
den = kl(posterior, benchmark)
print(f"KL(posterior || candidate) = {num.value:.3f}  (+/- {num.estimated_error:.1e})")
print(f"KL(posterior || benchmark) = {den.value:.3f}  (+/- {den.estimated_error:.1e})")
print(f"agreement score            = {num.value / den.value:.3f}  -> below 1, no conflict")

report = evaluate(
    PosteriorSummary(posterior, "analytic"),
    benchmark,
    [ExpertPrior("candidate", "N(0.5, 1)", candidate)],
)
entry = report.entries[0]
print(
    f"\nvia evaluate(): score={entry.dac_value:.3f} conflict={entry.conflict} "
    f"rank={entry.rank}"
)

print("\nKL is a divergence, not a distance:")
forward = kl(posterior, benchmark).value
backward = kl(benchmark, posterior).value
print(f"  forward  {forward:10.3f}")
print(f"  backward {backward:10.3f}")
