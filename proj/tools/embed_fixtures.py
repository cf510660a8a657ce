#!/usr/bin/env python3
"""Regenerates include/pbe/fixtures.hpp from scenarios/*.json."""
import pathlib

root = pathlib.Path(__file__).resolve().parent.parent
names = ["example1", "nomination-manipulation", "theorem-rfssp",
         "equal-representation-tie", "k-median-manipulation", "sp-tiebreak-unit",
         "approval-max-not-approx-sp"]

out = ["/**",
       " * @file fixtures.hpp",
       " * @brief Bundled scenario documents. Generated by tools/embed_fixtures.py",
       " * from the files in scenarios/; edit those, not this one.",
       " */",
       "#pragma once",
       "",
       "#include <array>",
       "#include <string_view>",
       "",
       "namespace pbe {",
       "",
       "struct BundledFixture {",
       "  std::string_view name;",
       "  std::string_view text;",
       "};",
       "",
       f"inline constexpr std::array<BundledFixture, {len(names)}> bundled_fixtures{{{{"]
for n in names:
    text = (root / "scenarios" / f"{n}.json").read_text()
    out.append(f'    {{"{n}", R"fixture({text})fixture"}},')
out += ["}};", "", "} // namespace pbe", ""]
(root / "include" / "pbe" / "fixtures.hpp").write_text("\n".join(out))
