"""Walkthrough on a tiny multi-truth instance.

Three online shops list the equipment needed for ice hockey.  Two of the
four claimed values are actually true (helmet, stick); boots and skis are
mistakes.  The demo fuses the claims with the exact enumeration engine
and the quadratic approximation, then re-estimates each shop's quality
from the fused probabilities.

Run:  python demos/winter_sports.py
"""

from multitruth import (
    ClaimSet,
    PriorConfig,
    SourceQuality,
    approx_fuse,
    exact_fuse,
    update_accuracy,
    update_precision,
    update_recall,
)

CLAIMS = {
    "shop1": {"helmet", "stick"},
    "shop2": {"stick", "boots"},
    "shop3": {"helmet", "skis"},
}


def main() -> None:
    claims = ClaimSet.from_claims("ice-hockey", CLAIMS)
    qualities = {
        s: SourceQuality(accuracy=0.6, recall=0.9, false_positive_rate=0.1,
                         precision=0.9)
        for s in CLAIMS
    }
    prior = PriorConfig(n=10, alpha=0.25,
                        truth_count_dist={1: 0.3, 2: 0.4, 3: 0.3})

    print("Claims:")
    for shop, values in sorted(CLAIMS.items()):
        print(f"  {shop}: {sorted(values)}")

    exact = exact_fuse(claims, qualities, prior)
    print("\nExact (possible-world enumeration):")
    for value, p in sorted(exact.probabilities.items(), key=lambda kv: -kv[1]):
        print(f"  p({value}) = {p:.4f}")
    print(f"  selected truths: {exact.selected_truths}")

    approx = approx_fuse(claims, qualities, prior)
    print("\nQuadratic approximation (vote counts + step loop):")
    for value, p in sorted(approx.probabilities.items(), key=lambda kv: -kv[1]):
        print(f"  p({value}) = {p:.4f}")
    print(f"  selected truths: {approx.selected_truths}")
    print(f"  terminated at step {approx.diagnostics.termination_step}")

    dataset = {"ice-hockey": claims}
    results = {"ice-hockey": exact}
    print("\nQuality re-estimated from the fused probabilities:")
    for shop in sorted(CLAIMS):
        p = update_precision(shop, dataset, results)
        r = update_recall(shop, dataset, results)
        a = update_accuracy(shop, dataset, results)
        print(f"  {shop}: precision={p:.3f} recall={r:.3f} accuracy={a:.3f}")


if __name__ == "__main__":
    main()
