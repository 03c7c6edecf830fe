#!/usr/bin/env python3
"""Regenerate include/gridmtd/cases.hpp from the JSON case files in data/."""
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
CASES = ["case6ww", "case14", "case57"]

HEADER = """#pragma once

// Generated by tools/embed_cases.py -- do not edit by hand.

#include "gridmtd/grid.hpp"

#include <string>
#include <string_view>

namespace gridmtd {
namespace embedded {
"""

FOOTER = """}  // namespace embedded

/// Load one of the bundled benchmark cases by name.
inline GridCase builtin_case(const std::string& name, double default_tau = 0.2) {
%s
  throw GridError("unknown builtin case: " + name);
}

inline std::vector<std::string> builtin_case_names() {
  return {%s};
}

}  // namespace gridmtd
"""


def main():
    chunks = [HEADER]
    lookups = []
    for name in CASES:
        doc = json.loads((ROOT / "data" / f"{name}.json").read_text())
        text = json.dumps(doc, indent=1)
        chunks.append(
            f"inline constexpr std::string_view {name} = R\"json(\n{text}\n)json\";\n\n"
        )
        lookups.append(
            f'  if (name == "{name}") return load_case(std::string(embedded::{name}), default_tau);'
        )
    names = ", ".join(f'"{c}"' for c in CASES)
    chunks.append(FOOTER % ("\n".join(lookups), names))
    out = ROOT / "include" / "gridmtd" / "cases.hpp"
    out.write_text("".join(chunks))
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
