"""How far can the quadratic approximation drift from the exact answer?

Part 1 replays the closed-form worst case for early termination: one
value with vote gamma*a and two tied at a.  The deviation on the weakest
value is (1/6)*(gamma+1)/(gamma+2), which approaches but never reaches
1/6 as gamma grows.

Part 2 shows that 1/6 is *not* a universal bound: with non-monotone stop
votes the step loop terminates while the exact enumeration still carries
most of the probability mass, and deviations above 0.5 occur.  See
tests/test_approx.py::TestErrorBound for the systematic measurement.

Run:  python demos/error_bound.py
"""

from multitruth import (
    VoteCountFixture,
    approx_fuse_from_votes,
    case_one_fixture,
    exact_fuse_from_votes,
)


def deviation(fixture: VoteCountFixture) -> float:
    exact = exact_fuse_from_votes(fixture)
    approx = approx_fuse_from_votes(fixture)
    return max(abs(exact.probabilities[v] - approx.probabilities[v])
               for v in exact.probabilities)


def main() -> None:
    print("Worst-case family (closed form (1/6)*(gamma+1)/(gamma+2)):")
    for gamma in (1.0, 2.0, 5.0, 10.0, 100.0):
        fixture = case_one_fixture(gamma)
        exact = exact_fuse_from_votes(fixture)
        approx = approx_fuse_from_votes(fixture, terminate=False)
        dev = abs(exact.probabilities["v3"] - approx.probabilities["v3"])
        closed = (1 / 6) * (gamma + 1) / (gamma + 2)
        print(f"  gamma={gamma:6.1f}  deviation={dev:.6f}  closed-form={closed:.6f}")

    print("\nA fixture that breaks the 1/6 bound (non-monotone stop votes):")
    fixture = VoteCountFixture(
        votes={"v0": 1.348, "v1": 4.69, "v2": 8.069, "v3": 3.906, "v4": 3.906},
        bot_votes=[0.0, 4.908, 0.4938, 0.6911, 0.04215])
    exact = exact_fuse_from_votes(fixture)
    approx = approx_fuse_from_votes(fixture)
    for v in sorted(fixture.votes, key=lambda v: -fixture.votes[v]):
        print(f"  {v}: exact={exact.probabilities[v]:.4f}  "
              f"approx={approx.probabilities[v]:.4f}")
    print(f"  max deviation = {deviation(fixture):.4f}  (> 1/6 = 0.1667)")
    print("  The step loop stops at step 2 because the stop vote spikes there;")
    print("  the exact enumeration keeps assigning mass to deeper truths.")


if __name__ == "__main__":
    main()
