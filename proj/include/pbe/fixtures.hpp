/**
 * @file fixtures.hpp
 * @brief Bundled scenario documents. Generated by tools/embed_fixtures.py
 * from the files in scenarios/; edit those, not this one.
 */
#pragma once

#include <array>
#include <string_view>

namespace pbe {

struct BundledFixture {
  std::string_view name;
  std::string_view text;
};

inline constexpr std::array<BundledFixture, 7> bundled_fixtures{{
    {"example1", R"fixture({
  "schema": "pbe-scenario/1",
  "name": "example1",
  "description": "Ten unit-cost projects, budget 3, five agents with partial awareness.",
  "instance": {
    "budget": 3,
    "projects": [
      {"id": 1, "cost": 1}, {"id": 2, "cost": 1}, {"id": 3, "cost": 1}, {"id": 4, "cost": 1},
      {"id": 5, "cost": 1}, {"id": 6, "cost": 1}, {"id": 7, "cost": 1}, {"id": 8, "cost": 1},
      {"id": 9, "cost": 1}, {"id": 10, "cost": 1}
    ]
  },
  "agents": [
    {"ranking": [1, 4, 5, 10, 2, 3, 6, 7, 8, 9], "awareness": [1, 4, 5, 10]},
    {"ranking": [1, 2, 6, 4, 3, 5, 7, 8, 9, 10], "awareness": [2, 6]},
    {"ranking": [1, 2, 7, 4, 3, 5, 6, 8, 9, 10], "awareness": [2, 7]},
    {"ranking": [1, 3, 8, 5, 2, 4, 6, 7, 9, 10], "awareness": [3, 8]},
    {"ranking": [1, 3, 9, 5, 2, 4, 6, 7, 8, 10], "awareness": [3, 9]}
  ],
  "config": {"shortlisting_rule": "nomination", "allocation_rule": "greedy-approval"},
  "expect": [
    {
      "command": "end-to-end",
      "checks": {
        "/outcomes/profile": [[1, 4, 5], [2, 6], [2, 7], [3, 8], [3, 9]],
        "/outcomes/shortlist": [1, 2, 3, 4, 5, 6, 7, 8, 9],
        "/outcomes/ballots": [[1, 4, 5], [1, 2, 6], [1, 2, 7], [1, 3, 8], [1, 3, 9]],
        "/outcomes/allocation": [1, 2, 3],
        "/outcomes/status": "exhaustive"
      }
    },
    {
      "command": "end-to-end",
      "config": {"allocation_rule": "approval-maximising"},
      "checks": {"/outcomes/allocation": [1, 2, 3]}
    },
    {
      "command": "shortlist",
      "config": {"shortlisting_rule": "equal-representation", "k": 2},
      "checks": {"/outcomes/shortlist": [1, 2, 3, 4, 6, 7]}
    },
    {
      "command": "allocate",
      "checks": {
        "/outcomes/approval_scores": [[1, 5], [2, 2], [3, 2], [4, 1], [5, 1], [6, 1], [7, 1], [8, 1], [9, 1]]
      }
    }
  ]
}
)fixture"},
    {"nomination-manipulation", R"fixture({
  "schema": "pbe-scenario/1",
  "name": "nomination-manipulation",
  "description": "Agent 1 drops its favourite project from its proposal and gains under anticipative reasoning.",
  "instance": {
    "budget": 3,
    "projects": [
      {"id": 1, "cost": 1}, {"id": 2, "cost": 1}, {"id": 3, "cost": 1}, {"id": 4, "cost": 1},
      {"id": 5, "cost": 1}, {"id": 6, "cost": 1}, {"id": 7, "cost": 1}, {"id": 8, "cost": 1},
      {"id": 9, "cost": 1}, {"id": 10, "cost": 1}
    ]
  },
  "agents": [
    {"ranking": [1, 4, 5, 10, 2, 3, 6, 7, 8, 9], "awareness": [1, 4, 5, 10]},
    {"ranking": [1, 2, 6, 4, 3, 5, 7, 8, 9, 10], "awareness": [2, 6]},
    {"ranking": [1, 2, 7, 4, 3, 5, 6, 8, 9, 10], "awareness": [2, 7]},
    {"ranking": [1, 3, 8, 5, 2, 4, 6, 7, 9, 10], "awareness": [3, 8]},
    {"ranking": [1, 3, 9, 5, 2, 4, 6, 7, 8, 10], "awareness": [3, 9]}
  ],
  "config": {
    "shortlisting_rule": "nomination",
    "allocation_rule": "greedy-approval",
    "mode": "anticipative",
    "variant": "restricted",
    "agent": 1,
    "deviation": [4, 5, 10]
  },
  "expect": [
    {
      "command": "check-fssp",
      "checks": {
        "/verdicts/0/status": "successful",
        "/verdicts/0/witness/truthful": [1, 4, 5],
        "/verdicts/0/witness/deviated_shortlist": [2, 3, 4, 5, 6, 7, 8, 9, 10],
        "/verdicts/0/witness/outcome": [1, 2, 3],
        "/verdicts/0/witness/deviated_outcome": [2, 4, 5]
      }
    },
    {
      "command": "check-fssp",
      "config": {"allocation_rule": "approval-maximising"},
      "checks": {
        "/verdicts/0/status": "successful",
        "/verdicts/0/witness/deviated_outcome": [2, 4, 5]
      }
    },
    {
      "command": "check-fssp",
      "config": {"model": "cost"},
      "checks": {"/verdicts/0/status": "successful"}
    }
  ]
}
)fixture"},
    {"theorem-rfssp", R"fixture({
  "schema": "pbe-scenario/1",
  "name": "theorem-rfssp",
  "description": "Two unit-cost projects, budget 1; each agent is aware only of the project it likes less.",
  "instance": {
    "budget": 1,
    "projects": [{"id": 1, "cost": 1, "coords": [0, 0]}, {"id": 2, "cost": 1, "coords": [1, 0]}]
  },
  "agents": [
    {"ranking": [2, 1], "awareness": [1]},
    {"ranking": [1, 2], "awareness": [2]}
  ],
  "config": {"shortlisting_rule": "nomination", "allocation_rule": "greedy-approval", "variant": "restricted"},
  "expect": [
    {
      "command": "check-fssp",
      "config": {"mode": "pessimistic"},
      "checks": {
        "/verdicts/0/status": "counterexample-found",
        "/verdicts/0/witness/agent": 1,
        "/verdicts/0/witness/deviation": [],
        "/verdicts/0/witness/deviated_outcome": [2]
      }
    },
    {
      "command": "check-fssp",
      "config": {"mode": "anticipative"},
      "checks": {
        "/verdicts/0/status": "counterexample-found",
        "/verdicts/0/witness/agent": 1,
        "/verdicts/0/witness/deviation": []
      }
    },
    {
      "command": "check-fssp",
      "config": {"variant": "unrestricted", "mode": "pessimistic"},
      "checks": {"/verdicts/0/status": "holds-on-suite", "/verdicts/0/exact": true}
    },
    {
      "command": "check-fssp",
      "config": {"variant": "unrestricted", "mode": "anticipative"},
      "checks": {"/verdicts/0/status": "holds-on-suite"}
    }
  ]
}
)fixture"},
    {"equal-representation-tie", R"fixture({
  "schema": "pbe-scenario/1",
  "name": "equal-representation-tie",
  "description": "1-equal-representation with four projects; the truthful shortlist is decided by a tie in representation score.",
  "instance": {
    "budget": 2,
    "projects": [{"id": 1, "cost": 1}, {"id": 2, "cost": 2}, {"id": 3, "cost": 1}, {"id": 4, "cost": 1}]
  },
  "agents": [
    {"ranking": [3, 4, 2, 1], "awareness": [1, 2, 3, 4]},
    {"ranking": [1, 2, 3, 4], "awareness": [1, 2]},
    {"ranking": [2, 1, 3, 4], "awareness": [2]}
  ],
  "shortlisting_profile": [[3, 4], [1, 2], [2]],
  "config": {
    "shortlisting_rule": "equal-representation",
    "k": 1,
    "allocation_rule": "approval-maximising",
    "variant": "unrestricted",
    "mode": "pessimistic"
  },
  "expect": [
    {
      "command": "shortlist",
      "informational": true,
      "note": "{p2} and {p1,p3} both score 11/3; canonical tie-breaking selects {p1,p3}.",
      "claimed": {"/outcomes/shortlist": [2]},
      "checks": {"/outcomes/shortlist": [1, 3], "/outcomes/representation_score": "11/3"}
    },
    {
      "command": "shortlist",
      "config": {"shortlisting_rule": "equal-representation"},
      "checks": {"/outcomes/cost": 2}
    },
    {
      "command": "check-fssp",
      "informational": true,
      "note": "With {p1,p3} shortlisted truthfully, agent 1 already gets p3; the exact search finds no successful deviation.",
      "claimed": {"/verdicts/0/status": "counterexample-found"},
      "checks": {"/verdicts/0/status": "holds-on-suite", "/verdicts/0/exact": true, "/verdicts/0/cases": 45}
    },
    {
      "command": "check-fssp",
      "config": {"mode": "optimistic"},
      "informational": true,
      "note": "Same tie; no optimistic witness either.",
      "claimed": {"/verdicts/0/status": "counterexample-found"},
      "checks": {"/verdicts/0/status": "holds-on-suite", "/verdicts/0/exact": true}
    }
  ]
}
)fixture"},
    {"k-median-manipulation", R"fixture({
  "schema": "pbe-scenario/1",
  "name": "k-median-manipulation",
  "description": "1-median over seven unit-cost projects in the plane, budget 3.",
  "instance": {
    "budget": 3,
    "projects": [
      {"id": 1, "cost": 1, "coords": [0, 1]},
      {"id": 2, "cost": 1, "coords": [0, -1]},
      {"id": 3, "cost": 1, "coords": [-1.7320508075688772, 0]},
      {"id": 4, "cost": 1, "coords": [-0.5773502691896258, 0]},
      {"id": 5, "cost": 1, "coords": [4, 0]},
      {"id": 6, "cost": 1, "coords": [4, 1]},
      {"id": 7, "cost": 1, "coords": [4, -1]}
    ]
  },
  "agents": [
    {"ranking": [1, 2, 3, 4, 5, 6, 7], "awareness": [1, 2, 3, 5]},
    {"ranking": [4, 6, 7, 1, 2, 3, 5], "awareness": [4, 6, 7]}
  ],
  "config": {
    "shortlisting_rule": "k-median",
    "k": 1,
    "allocation_rule": "approval-maximising",
    "variant": "restricted",
    "mode": "pessimistic",
    "agent": 1,
    "deviation": [1, 2, 5]
  },
  "expect": [
    {
      "command": "shortlist",
      "checks": {"/outcomes/profile": [[1, 2, 3], [4, 6, 7]], "/outcomes/shortlist": [4, 6, 7]}
    },
    {
      "command": "shortlist",
      "informational": true,
      "note": "The truthful clusters are {p1,p2,p3,p4}, {p6}, {p7}; p5 is not proposed.",
      "claimed": {"/outcomes/partitions": [[[1, 2, 3, 4], [5], [6]]]},
      "checks": {"/outcomes/partitions": [[[1, 2, 3, 4], [6], [7]]]}
    },
    {
      "command": "check-fssp",
      "checks": {
        "/verdicts/0/status": "successful",
        "/verdicts/0/exact": true,
        "/verdicts/0/witness/shortlist": [4, 6, 7],
        "/verdicts/0/witness/deviated_shortlist": [1, 2, 5]
      }
    }
  ]
}
)fixture"},
    {"sp-tiebreak-unit", R"fixture({
  "schema": "pbe-scenario/1",
  "name": "sp-tiebreak-unit",
  "description": "Approval-maximising on seven unit-cost projects with an explicit priority over allocations.",
  "instance": {
    "budget": 4,
    "projects": [
      {"id": 1, "cost": 1}, {"id": 2, "cost": 1}, {"id": 3, "cost": 1}, {"id": 4, "cost": 1},
      {"id": 5, "cost": 1}, {"id": 6, "cost": 1}, {"id": 7, "cost": 1}
    ]
  },
  "agents": [
    {"ranking": [1, 2, 3, 4, 5, 6, 7]},
    {"ranking": [4, 5, 6, 7, 1, 2, 3]}
  ],
  "shortlist": [1, 2, 3, 4, 5, 6, 7],
  "config": {
    "allocation_rule": "approval-maximising",
    "tie_break": [[1, 2, 3, 5], [4, 5, 6, 7]]
  },
  "expect": [
    {
      "command": "allocate",
      "checks": {"/outcomes/ballots": [[1, 2, 3, 4], [4, 5, 6, 7]], "/outcomes/allocation": [4, 5, 6, 7]}
    },
    {
      "command": "check-ssp",
      "config": {"agent": 1, "deviations": [[1, 2, 3]], "approximate": true},
      "checks": {
        "/verdicts/0/status": "counterexample-found",
        "/verdicts/0/witness/deviation": [1, 2, 3],
        "/verdicts/0/witness/truthful_outcome": [4, 5, 6, 7],
        "/verdicts/0/witness/manipulated_outcome": [1, 2, 3, 5]
      }
    },
    {
      "command": "check-ssp",
      "config": {"tie_break": [], "sp_search": "full"},
      "checks": {"/verdicts/0/status": "holds-on-suite", "/verdicts/0/exact": true}
    }
  ]
}
)fixture"},
    {"approval-max-not-approx-sp", R"fixture({
  "schema": "pbe-scenario/1",
  "name": "approval-max-not-approx-sp",
  "description": "Eight projects with costs 4, 6 and 3, budget 12; approval-maximising is not approximately strategyproof.",
  "instance": {
    "budget": 12,
    "projects": [
      {"id": 1, "cost": 4}, {"id": 2, "cost": 4}, {"id": 3, "cost": 4}, {"id": 4, "cost": 6},
      {"id": 5, "cost": 6}, {"id": 6, "cost": 3}, {"id": 7, "cost": 3}, {"id": 8, "cost": 3}
    ]
  },
  "agents": [
    {"ranking": [6, 7, 8, 1, 2, 3, 4, 5]},
    {"ranking": [4, 5, 1, 2, 3, 6, 7, 8]},
    {"ranking": [1, 2, 3, 4, 5, 6, 7, 8]}
  ],
  "shortlist": [1, 2, 3, 4, 5, 6, 7, 8],
  "config": {"allocation_rule": "approval-maximising", "approximate": true},
  "expect": [
    {
      "command": "allocate",
      "checks": {"/outcomes/ballots": [[6, 7, 8], [4, 5], [1, 2, 3]], "/outcomes/allocation": [1, 2, 3]}
    },
    {
      "command": "check-ssp",
      "config": {"agent": 1, "deviations": [[5, 6, 7]]},
      "checks": {
        "/verdicts/0/status": "counterexample-found",
        "/verdicts/0/witness/truthful_outcome": [1, 2, 3],
        "/verdicts/0/witness/manipulated_outcome": [5, 6, 7]
      }
    },
    {
      "command": "check-ssp",
      "config": {"agent": 1, "deviations": [[5, 6, 7]], "model": "cost"},
      "checks": {
        "/verdicts/0/status": "counterexample-found",
        "/verdicts/0/witness/manipulated_outcome": [5, 6, 7]
      }
    },
    {
      "command": "check-ssp",
      "config": {"allocation_rule": "greedy-approval", "model": "cost"},
      "checks": {"/verdicts/0/status": "holds-on-suite"}
    }
  ]
}
)fixture"},
}};

} // namespace pbe
