#!/usr/bin/env python3
"""Emit data/lexicons/emoji_map.txt from curated codepoint lists.

Boundary policy, mirrored in the project docs: faces, gestures, body parts,
people, and anthropomorphized animal faces are visual kinesics (VK); emoji
depicting interpersonal touch are tactile kinesics (TK); everything else is
an artifact (A) — enforced both by explicit entries and by the loader's
default for unknown clusters.
"""


def rng(a: int, b: int) -> list[int]:
    return list(range(a, b + 1))


VK: list[int] = []
# Faces, cat faces, monkeys, and person gestures.
VK += rng(0x1F600, 0x1F64F)
VK += [0x263A, 0x2639]
# Supplemental faces and hats.
VK += rng(0x1F910, 0x1F917)
VK += rng(0x1F920, 0x1F92F)
VK += rng(0x1F970, 0x1F976)
VK += [0x1F978, 0x1F97A, 0x1F9D0]
VK += rng(0x1FAE0, 0x1FAE8)
# Hand gestures (0x1F44A "oncoming fist" is touch, listed under TK).
VK += [c for c in rng(0x1F446, 0x1F450) if c != 0x1F44A]
VK += [0x1F4AA, 0x1F590, 0x1F595, 0x1F596]
VK += rng(0x270A, 0x270D)
VK += [0x1F918, 0x1F919, 0x1F91A, 0x1F91E, 0x1F91F, 0x1F932, 0x1F933]
# Body parts.
VK += rng(0x1F440, 0x1F445)
VK += [0x1F463, 0x1F480]
# People, costumes, and activities (couples and massage are TK).
VK += rng(0x1F466, 0x1F469)
VK += [0x1F46A, 0x1F46E, 0x1F46F]
VK += rng(0x1F470, 0x1F47F)
VK += [0x1F481, 0x1F482, 0x1F483, 0x1F485, 0x1F487, 0x1F57A]
VK += [0x1F3C3, 0x1F6B6, 0x1F930, 0x1F931, 0x1F934, 0x1F935, 0x1F936]
VK += rng(0x1F938, 0x1F93E)
VK += rng(0x1F9D1, 0x1F9DF)
# Anthropomorphized animal faces.
VK += [0x1F435, 0x1F436, 0x1F431, 0x1F42D, 0x1F439, 0x1F430, 0x1F43A,
       0x1F43B, 0x1F43C, 0x1F428, 0x1F42F, 0x1F981, 0x1F42E, 0x1F437,
       0x1F438, 0x1F434, 0x1F98A, 0x1F98B]

TK: list[int] = [
    0x1F91D,          # handshake
    0x1F44A,          # oncoming fist (fist bump / punch)
    0x1F91B, 0x1F91C, # left / right fist
    0x1F48B,          # kiss mark
    0x1F48F,          # kissing couple
    0x1F491,          # couple with heart
    0x1FAC2,          # people hugging
    0x1F46B, 0x1F46C, 0x1F46D,  # couples holding hands
    0x1F486,          # face massage
]
TK += rng(0x1FAF1, 0x1FAF6)   # hand interactions

A: list[int] = [
    0x2764,           # heart
    0x1F525,          # fire
    0x2728,           # sparkles
    0x1F389, 0x1F38A, # party popper / confetti
    0x2B50, 0x1F31F,  # stars
    0x1F4AF,          # hundred points
    0x1F4A5, 0x1F4A8, 0x1F4AB, 0x1F4A4, 0x1F4A2,  # comic effects
    0x1F3A5, 0x1F4F7, 0x1F3B5, 0x1F3B6,           # media dressing
    0x1F380, 0x1F381, 0x1F388,                    # wrapping
]
A += rng(0x1F493, 0x1F49F)    # decorated hearts
A += [0x1F5A4, 0x1F90D, 0x1F90E, 0x1F9E1, 0x1FA75, 0x1FA76, 0x1FA77]


def main() -> None:
    seen: dict[int, str] = {}
    for cat, cps in (("VK", VK), ("TK", TK), ("A", A)):
        for cp in cps:
            if cp in seen:
                raise SystemExit(f"duplicate codepoint {cp:04X} in {cat} and {seen[cp]}")
            seen[cp] = cat
    lines = [
        "# Emoji cluster classification: <cluster> <CATEGORY>.",
        "# Unknown clusters default to A; lookups strip variation selectors",
        "# and skin tones, then fall back to the first scalar of a sequence.",
    ]
    for cp in sorted(seen):
        lines.append(f"{chr(cp)} {seen[cp]}")
    with open("data/lexicons/emoji_map.txt", "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")
    print(f"entries: {len(seen)}")


if __name__ == "__main__":
    main()
