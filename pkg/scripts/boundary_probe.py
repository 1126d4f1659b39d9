"""Formats at the left endpoint p_N = q, where the published witness is most
fragile. Prints the rank reached by each witness strategy separately.
"""

from perfect_formats.certify import certify_perfect
from perfect_formats.formats import perfect_threshold_q

FORMATS = [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (4, 4), (2, 2, 2), (2, 2, 3)]

if __name__ == "__main__":
    for head in FORMATS:
        dims = (*head, perfect_threshold_q((*head, max(head))))
        if dims[-1] < max(head):
            continue
        line = [f"{'x'.join(map(str, dims)):>10}"]
        for strategy in ("paper", "crossed", "random"):
            cert = certify_perfect(dims, strategies=(strategy,))
            line.append(f"{strategy}={cert.rank}/{cert.cols}")
        print("  ".join(line))
