#!/usr/bin/env python3
"""Regenerates include/tpl/unicode_data.hpp.

Pulls general categories, combining classes and canonical (de)composition
data from the stdlib unicodedata module, and grapheme-cluster-break /
emoji / script properties from the third-party regex module.

Run from the repository root:

    python3 tools/gen_unicode_tables.py
"""

import sys
import unicodedata

try:
    import regex
except ImportError:
    sys.exit("the 'regex' module is required (pip install regex)")

MAX_CP = 0x110000
OUT = "include/tpl/unicode_data.hpp"

GC_NAMES = [
    "Lu", "Ll", "Lt", "Lm", "Lo",
    "Mn", "Mc", "Me",
    "Nd", "Nl", "No",
    "Pc", "Pd", "Ps", "Pe", "Pi", "Pf", "Po",
    "Sm", "Sc", "Sk", "So",
    "Zs", "Zl", "Zp",
    "Cc", "Cf", "Cs", "Co", "Cn",
]

GCB_NAMES = [
    "CR", "LF", "Control", "Extend", "ZWJ", "Regional_Indicator",
    "Prepend", "SpacingMark", "L", "V", "T", "LV", "LVT",
]


def prop_mask(name):
    """Bit per codepoint for one \\p{...} property, scanned in chunks."""
    pat = regex.compile(r"\p{" + name + r"}")
    hits = bytearray(MAX_CP)
    chunk = 0x1000
    for base in range(0, MAX_CP, chunk):
        chars = []
        idx = []
        for cp in range(base, min(base + chunk, MAX_CP)):
            if 0xD800 <= cp <= 0xDFFF:
                continue
            chars.append(chr(cp))
            idx.append(cp)
        if not chars:
            continue
        s = "".join(chars)
        for m in pat.finditer(s):
            hits[idx[m.start()]] = 1
    return hits


def mask_to_ranges(hits):
    out = []
    start = None
    for cp in range(MAX_CP):
        if hits[cp]:
            if start is None:
                start = cp
        elif start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, MAX_CP - 1))
    return out


def gc_ranges():
    out = []
    cur_cat = None
    start = 0
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF:
            cat = "Cs"
        else:
            cat = unicodedata.category(chr(cp))
        if cat != cur_cat:
            if cur_cat is not None and cur_cat != "Cn":
                out.append((start, cp - 1, cur_cat))
            cur_cat = cat
            start = cp
    if cur_cat is not None and cur_cat != "Cn":
        out.append((start, MAX_CP - 1, cur_cat))
    return out


def ccc_ranges():
    out = []
    cur = 0
    start = 0
    for cp in range(MAX_CP):
        c = 0 if 0xD800 <= cp <= 0xDFFF else unicodedata.combining(chr(cp))
        if c != cur:
            if cur != 0:
                out.append((start, cp - 1, cur))
            cur = c
            start = cp
    if cur != 0:
        out.append((start, MAX_CP - 1, cur))
    return out


def decomp_entries():
    """cp -> fully decomposed (NFD) codepoints, Hangul excluded."""
    entries = []
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF or 0xAC00 <= cp <= 0xD7A3:
            continue
        ch = chr(cp)
        d = unicodedata.normalize("NFD", ch)
        if d != ch:
            entries.append((cp, [ord(c) for c in d]))
    return entries


def comp_pairs():
    """(a, b) -> composed, with composition exclusions already applied."""
    pairs = []
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF or 0xAC00 <= cp <= 0xD7A3:
            continue
        d = unicodedata.decomposition(chr(cp))
        if not d or d.startswith("<"):
            continue
        parts = d.split()
        if len(parts) != 2:
            continue
        a, b = int(parts[0], 16), int(parts[1], 16)
        if unicodedata.normalize("NFC", chr(a) + chr(b)) == chr(cp):
            pairs.append((a, b, cp))
    pairs.sort()
    return pairs


def fmt_rows(items, per_line, indent="    "):
    lines = []
    for i in range(0, len(items), per_line):
        lines.append(indent + " ".join(items[i : i + per_line]))
    return "\n".join(lines)


def main():
    gcs = gc_ranges()
    cccs = ccc_ranges()
    decomps = decomp_entries()
    comps = comp_pairs()

    gcb_masks = {n: prop_mask("Grapheme_Cluster_Break=" + n) for n in GCB_NAMES}
    gcb_rows = []
    for cp in range(MAX_CP):
        for n in GCB_NAMES:
            if gcb_masks[n][cp]:
                gcb_rows.append((cp, n))
                break
    gcb_ranges = []
    for cp, n in gcb_rows:
        if gcb_ranges and gcb_ranges[-1][1] == cp - 1 and gcb_ranges[-1][2] == n:
            gcb_ranges[-1] = (gcb_ranges[-1][0], cp, n)
        else:
            gcb_ranges.append((cp, cp, n))

    ext_pict = mask_to_ranges(prop_mask("Extended_Pictographic"))
    emoji_pres = mask_to_ranges(prop_mask("Emoji_Presentation"))
    latin = mask_to_ranges(prop_mask("Script=Latin"))
    incb_consonant = mask_to_ranges(prop_mask("InCB=Consonant"))
    incb_linker = mask_to_ranges(prop_mask("InCB=Linker"))
    incb_extend = mask_to_ranges(prop_mask("InCB=Extend"))

    decomp_data = []
    decomp_index = []
    for cp, cps in decomps:
        decomp_index.append((cp, len(decomp_data), len(cps)))
        decomp_data.extend(cps)

    with open(OUT, "w", encoding="utf-8") as f:
        w = f.write
        w("// Generated by tools/gen_unicode_tables.py -- do not edit by hand.\n")
        w("// unicodedata %s, regex %s\n" % (unicodedata.unidata_version, regex.__version__))
        w("#pragma once\n\n#include <cstdint>\n\n")
        w("namespace tpl::udata {\n\n")

        w("enum class Gc : std::uint8_t {\n")
        w(fmt_rows([n + "," for n in GC_NAMES], 10) + "\n};\n\n")

        w("struct GcRange { char32_t lo; char32_t hi; Gc gc; };\n")
        w("inline constexpr GcRange kGcRanges[] = {\n")
        w(fmt_rows(["{0x%X,0x%X,Gc::%s}," % r for r in gcs], 4) + "\n};\n\n")

        w("struct CccRange { char32_t lo; char32_t hi; std::uint8_t ccc; };\n")
        w("inline constexpr CccRange kCccRanges[] = {\n")
        w(fmt_rows(["{0x%X,0x%X,%d}," % r for r in cccs], 5) + "\n};\n\n")

        w("inline constexpr char32_t kDecompData[] = {\n")
        w(fmt_rows(["0x%X," % v for v in decomp_data], 12) + "\n};\n\n")

        w("struct DecompEntry { char32_t cp; std::uint16_t off; std::uint8_t len; };\n")
        w("inline constexpr DecompEntry kDecompEntries[] = {\n")
        w(fmt_rows(["{0x%X,%d,%d}," % e for e in decomp_index], 5) + "\n};\n\n")

        w("struct CompPair { char32_t a; char32_t b; char32_t composed; };\n")
        w("inline constexpr CompPair kCompPairs[] = {\n")
        w(fmt_rows(["{0x%X,0x%X,0x%X}," % p for p in comps], 4) + "\n};\n\n")

        w("enum class Gcb : std::uint8_t {\n")
        w("    Other, " + ", ".join(n.replace("_", "") for n in GCB_NAMES) + "\n};\n\n")
        w("struct GcbRange { char32_t lo; char32_t hi; Gcb v; };\n")
        w("inline constexpr GcbRange kGcbRanges[] = {\n")
        w(fmt_rows(["{0x%X,0x%X,Gcb::%s}," % (a, b, n.replace("_", "")) for a, b, n in gcb_ranges], 4) + "\n};\n\n")

        w("struct Range { char32_t lo; char32_t hi; };\n")
        for name, ranges in [
            ("kExtendedPictographic", ext_pict),
            ("kEmojiPresentation", emoji_pres),
            ("kLatinScript", latin),
            ("kIncbConsonant", incb_consonant),
            ("kIncbLinker", incb_linker),
            ("kIncbExtend", incb_extend),
        ]:
            w("inline constexpr Range %s[] = {\n" % name)
            w(fmt_rows(["{0x%X,0x%X}," % r for r in ranges], 6) + "\n};\n\n")

        w("}  // namespace tpl::udata\n")

    print("wrote %s: %d gc, %d ccc, %d decomp, %d comp, %d gcb, %d extpict, %d emojipres, %d latin, %d incb-c, %d incb-l, %d incb-e"
          % (OUT, len(gcs), len(cccs), len(decomp_index), len(comps),
             len(gcb_ranges), len(ext_pict), len(emoji_pres), len(latin),
             len(incb_consonant), len(incb_linker), len(incb_extend)))


if __name__ == "__main__":
    main()
