// Built-in scenarios. Each entry is the same JSON document a user could pass
// with `scenario run --file`, so the registry doubles as a schema reference.

#include "scenario_resolve.hpp"

namespace slicelab {

namespace {

const char* const kScenarios[] = {
    R"json({
  "name": "example-3.6",
  "anchor": "Example 3.6",
  "summary": "Psi(f, a) = f + a^2 1 is slice continuous w.r.t. the projection Phi(f, a) = f, though not of the form P o Phi.",
  "construction": {
    "seed": 36,
    "budget": 8000,
    "spaces": {
      "C": {"type": "sup", "n": 8},
      "K": {"type": "sup", "n": 1},
      "X": {"type": "direct_sum", "left": "C", "right": "K"}
    },
    "maps": {
      "phi": {"kind": "summand_projection", "domain": "X"},
      "psi": {"kind": "augmented_projection", "domain": "X"}
    },
    "duals": {"e2": {"kind": "coordinate", "space": "C", "index": 2}},
    "functionals": {
      "phi_e2": {"kind": "pullback", "map": "phi", "dual": "e2"},
      "psi_e2": {"kind": "pullback", "map": "psi", "dual": "e2"}
    },
    "vectors": {"kernel_point": {"kind": "basis", "space": "X", "index": 8}},
    "ops": [
      {"id": "norm_phi", "op": "norm", "map": "phi"},
      {"id": "norm_psi", "op": "norm", "map": "psi"},
      {"id": "psi_on_kernel", "op": "norm", "map": {"kind": "sum", "terms": ["psi", {"kind": "scaled", "map": "phi", "by": -1}]}},
      {"id": "half_slice_plus", "op": "inclusion",
       "inner": {"functional": "phi_e2", "epsilon": 0.2, "omega": 1},
       "outer": {"functional": "psi_e2", "epsilon": 0.4, "omega": 1}},
      {"id": "half_slice_minus", "op": "inclusion",
       "inner": {"functional": "phi_e2", "epsilon": 0.2, "omega": -1},
       "outer": {"functional": "psi_e2", "epsilon": 0.4, "omega": -1}}
    ]
  },
  "expected": {
    "norm_phi": {"lower_bound": {"approx": 1, "tol": 1e-9}},
    "norm_psi": {"lower_bound": {"approx": 1, "tol": 1e-9}},
    "psi_on_kernel": {"lower_bound": {"min": 0.999999999}},
    "half_slice_plus": {"status": "HoldsOnGrid", "inner_empty": false},
    "half_slice_minus": {"status": "HoldsOnGrid", "inner_empty": false}
  }
})json",

    R"json({
  "name": "remark-3.9",
  "aliases": ["remark-3.9-counterexample"],
  "anchor": "Remark 3.9",
  "summary": "On L1 + L1 the projection plus the averaged rank-one map has norm exactly 1, so the Daugavet equation fails.",
  "construction": {
    "seed": 39,
    "spaces": {
      "L": {"type": "uniform_l1", "n": 16},
      "X": {"type": "direct_sum", "left": "L", "right": "L"}
    },
    "vectors": {"one": {"kind": "constant", "space": "L", "value": 1}},
    "duals": {"integral": {"kind": "integration", "space": "L"}},
    "maps": {
      "phi": {"kind": "summand_projection", "domain": "X"},
      "avg": {"kind": "averaging_rank_one", "domain": "X"},
      "psi": {"kind": "rank_one", "functional": {"kind": "pullback", "map": "avg", "dual": "integral"},
              "vector": "one", "codomain": "L"},
      "composite": {"kind": "sum", "terms": ["phi", "psi"]}
    },
    "ops": [
      {"id": "norm_composite", "op": "norm", "map": "composite"},
      {"id": "defect", "op": "defect", "phi": "phi", "psi": "psi"}
    ]
  },
  "expected": {
    "norm_composite": {"lower_bound": {"min": 0.999999999}, "upper_bound": {"max": 1.000000001},
                       "upper_source": "linear", "witness": {"size": 32}},
    "defect": {"verdict": "DaugavetFails", "norm_phi.lower_bound": {"min": 0.999999999},
               "norm_psi.lower_bound": {"min": 0.999999999}, "defect_lo": {"min": 0.999999999}}
  }
})json",

    R"json({
  "name": "remark-3.14",
  "anchor": "Remark 3.14",
  "summary": "Projection and shift on L1 + L2 both have norm one while their sum has norm one; the weakly compact pipeline cannot apply.",
  "construction": {
    "seed": 314,
    "budget": 4000,
    "spaces": {
      "L1": {"type": "uniform_l1", "n": 16},
      "L2": {"type": "lp", "n": 16, "p": 2},
      "X": {"type": "direct_sum", "left": "L1", "right": "L2"}
    },
    "maps": {
      "phi": {"kind": "summand_projection", "domain": "X"},
      "psi": {"kind": "shift", "domain": "X"},
      "composite": {"kind": "sum", "terms": ["phi", "psi"]}
    },
    "families": {"upsilon": {"base": "phi", "functionals": [], "epsilons": []}},
    "ops": [
      {"id": "upper", "op": "upper_bound", "map": "composite"},
      {"id": "defect", "op": "defect", "phi": "phi", "psi": "psi"},
      {"id": "pipeline", "op": "weakly_compact", "phi": "phi", "upsilon": "upsilon", "psi": "psi", "epsilon": 0.1}
    ]
  },
  "expected": {
    "upper": {"value": {"max": 1.000001}},
    "defect": {"norm_phi.lower_bound": {"min": 0.999999}, "norm_psi.lower_bound": {"min": 0.999999},
               "norm_sum.upper_bound": {"max": 1.000001}, "verdict": "DaugavetFails"},
    "pipeline": {"verdict": "Inconclusive", "failed_stage": "slice-continuity", "continuity.overall": "Violated"}
  }
})json",

    R"json({
  "name": "example-4.7",
  "aliases": ["example-4.7-weak-not-strong"],
  "anchor": "Example 4.7",
  "summary": "The jump map 1 at 0, -|x| elsewhere is weakly but not strongly slice continuous w.r.t. the identity on R.",
  "construction": {
    "seed": 47,
    "spaces": {"R": {"type": "sup", "n": 1}},
    "maps": {"psi": {"kind": "signed_jump"}, "id": {"kind": "identity", "domain": "R"}},
    "families": {
      "strong_targets": {"base": "psi", "functionals": [[1]], "epsilons": [0.5]},
      "strong_candidates": {"base": "id", "functionals": [[1], [-1]], "epsilons": []},
      "weak_targets": {"base": "psi", "functionals": [[1], [-1]], "epsilons": [0.05, 0.1, 0.25], "kind": "weak"},
      "weak_candidates": {"base": "id", "functionals": [[1], [-1]], "epsilons": [], "kind": "weak"}
    },
    "ops": [
      {"id": "strong", "op": "strong_continuity", "targets": "strong_targets", "candidates": "strong_candidates"},
      {"id": "weak", "op": "weak_continuity", "targets": "weak_targets", "candidates": "weak_candidates"}
    ]
  },
  "expected": {
    "strong": {"overall": "Violated", "rows.0.status": "Violated", "rows.0.witness": {"size": 1}},
    "weak": {"overall": "HoldsOnGrid", "rows": {"size": 6}, "rows.*.status": "HoldsOnGrid"}
  }
})json",

    R"json({
  "name": "remark-2.7-ade",
  "anchor": "Remark 2.7",
  "summary": "-Id never satisfies the Daugavet equation but always satisfies the alternative one.",
  "construction": {
    "seed": 27,
    "spaces": {"X": {"type": "sup", "n": 4}},
    "maps": {
      "id": {"kind": "identity", "domain": "X"},
      "minus_id": {"kind": "scaled", "map": "id", "by": -1}
    },
    "ops": [
      {"id": "de", "op": "defect", "phi": "id", "psi": "minus_id"},
      {"id": "ade", "op": "alt_defect", "phi": "id", "psi": "minus_id", "grid": "real"},
      {"id": "witness", "op": "extract_alt_witness", "phi": "minus_id",
       "functional": {"kind": "linear", "space": "X", "dual": {"kind": "coordinate", "space": "X", "index": 0}},
       "y": [1, 0, 0, 0], "epsilon": 0.05}
    ]
  },
  "expected": {
    "de": {"verdict": "DaugavetFails", "defect_lo": {"min": 1.999999999}},
    "ade": {"best_omega": -1, "best.defect": {"approx": 0, "tol": 1e-9}},
    "witness": {"found": true}
  }
})json",

    R"json({
  "name": "example-5.4",
  "anchor": "Example 5.4",
  "summary": "The cube map on l_inf has the local Daugavet property for even unimodular x' and every sign vector, although l_inf lacks the Daugavet property.",
  "construction": {
    "seed": 54,
    "budget": 2000,
    "spaces": {"X": {"type": "sup", "n": 4}},
    "maps": {
      "cube": {"kind": "cube", "domain": "X"},
      "id": {"kind": "identity", "domain": "X"},
      "minus_two_p": {"kind": "scaled", "by": -2, "map": {"kind": "rank_one",
        "functional": {"kind": "linear", "space": "X", "dual": {"kind": "coordinate", "space": "X", "index": 0}},
        "vector": {"kind": "basis", "space": "X", "index": 0}, "codomain": "X"}}
    },
    "contexts": {
      "even_unimodular": {
        "W": [{"kind": "constant", "space": "X", "value": 1}, {"kind": "product_sign", "space": "X", "i": 0, "j": 1}],
        "Delta": {"kind": "sign_vectors", "space": "X"}
      }
    },
    "ops": [
      {"id": "local", "op": "local", "map": "cube", "context": "even_unimodular", "epsilon": 0.05},
      {"id": "onto", "op": "quotient", "map": "cube"},
      {"id": "no_daugavet_property", "op": "defect", "phi": "id", "psi": "minus_two_p"}
    ]
  },
  "expected": {
    "local": {"overall": "Holds", "rows": {"size": 32}, "norm_determining": true},
    "onto": {"status": "Surjective"},
    "no_daugavet_property": {"verdict": "DaugavetFails"}
  }
})json",

    R"json({
  "name": "remark-5.7-cube-slices",
  "anchor": "Remark 5.7(2)",
  "summary": "For probability mu and z in the unit ball, <z^3, mu> >= 1 - eps/2 forces <z, mu> >= 1 - eps.",
  "construction": {
    "seed": 572,
    "ops": [
      {"id": "eps_0.1", "op": "cube_slice", "n": 8, "epsilon": 0.1, "count": 10000},
      {"id": "eps_0.3", "op": "cube_slice", "n": 8, "epsilon": 0.3, "count": 10000}
    ]
  },
  "expected": {
    "eps_0.1": {"accepted": 10000, "max_violation": {"max": 1e-9}},
    "eps_0.3": {"accepted": 10000, "max_violation": {"max": 1e-9}}
  }
})json",

    R"json({
  "name": "remark-5.7-fourth-root",
  "anchor": "Remark 5.7(3)",
  "summary": "|x|^(1/4) on the positive cone: the local Daugavet property holds with the constant witness 1.",
  "construction": {
    "seed": 573,
    "budget": 1500,
    "spaces": {"X": {"type": "sup", "n": 3}},
    "restrictions": {"cone": {"kind": "positive_orthant", "space": "X"}},
    "maps": {"root": {"kind": "fourth_root", "domain": "X"}},
    "contexts": {
      "cone": {
        "gamma": "cone",
        "W": [{"kind": "linear", "space": "X", "dual": {"kind": "uniform_probability", "space": "X"}},
              {"kind": "linear", "space": "X", "dual": {"kind": "coordinate", "space": "X", "index": 0}},
              {"kind": "linear", "space": "X", "dual": {"kind": "coordinate", "space": "X", "index": 2}}],
        "Delta": [[1, 1, 1], [1, 0.5, 0], [0.25, 1, 0.75]]
      }
    },
    "ops": [
      {"id": "local", "op": "local", "map": "root", "context": "cone", "epsilon": 0.05},
      {"id": "norm_on_cone", "op": "norm", "map": "root", "gamma": "cone"}
    ]
  },
  "expected": {
    "local": {"overall": "Holds", "rows.*.witness.*": {"approx": 1, "tol": 1e-9}},
    "norm_on_cone": {"lower_bound": {"approx": 1, "tol": 1e-12}}
  }
})json",

    R"json({
  "name": "example-5.11-kyfan",
  "anchor": "Example 5.11",
  "summary": "Ky Fan criterion for Phi(g) = g^2, Psi(g) = |g| on C = {g : g^2 <= f <= |g|}, z = 1, V = probability measures. With min f = 0.5 the consequence slices meet C only when eps >= 1 - sqrt(0.5); f near 1 gives non-empty slices.",
  "construction": {
    "seed": 511,
    "budget": 4000,
    "spaces": {"X": {"type": "sup", "n": 8}},
    "vectors": {
      "one": {"kind": "constant", "space": "X", "value": 1},
      "f": [1, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5],
      "f_near_one": [1, 0.97, 0.97, 0.97, 0.97, 0.97, 0.97, 0.97]
    },
    "problems": {
      "band": {
        "V": {"kind": "point_masses", "space": "X"},
        "B": {"kind": "square_root_band", "f": "f", "count": 200, "stream": 1},
        "Psi": {"kind": "abs", "domain": "X"},
        "Phi": {"kind": "square", "domain": "X"},
        "z": "one",
        "K": 1
      },
      "narrow_band": {
        "V": {"kind": "point_masses", "space": "X"},
        "B": {"kind": "square_root_band", "f": "f_near_one", "count": 200, "stream": 2},
        "Psi": {"kind": "abs", "domain": "X"},
        "Phi": {"kind": "square", "domain": "X"},
        "z": "one",
        "K": 1
      }
    },
    "ops": [
      {"id": "inequality", "op": "kyfan_sample", "problem": "band", "combinations": 1000},
      {"id": "certificate", "op": "kyfan_certificate", "problem": "band", "epsilons": [0.05, 0.1]},
      {"id": "narrow_inequality", "op": "kyfan_sample", "problem": "narrow_band", "combinations": 1000},
      {"id": "narrow_certificate", "op": "kyfan_certificate", "problem": "narrow_band", "epsilons": [0.05, 0.1]}
    ]
  },
  "expected": {
    "inequality": {"combinations": 1000, "max_residual": {"max": 1e-9}},
    "certificate": {"found": true, "consequences": {"size": 2}, "consequences.*.holds": true},
    "narrow_inequality": {"combinations": 1000, "max_residual": {"max": 1e-9}},
    "narrow_certificate": {"found": true, "consequences.*.holds": true, "consequences.*.slice_points": {"min": 1}}
  }
})json",

    R"json({
  "name": "example-5.13-positive",
  "anchor": "Example 5.13",
  "summary": "Phi(x) = x^2 and Psi(x) = <x^2, mu> 1 on C(K): the Daugavet equation holds, attained at x = 1.",
  "construction": {
    "seed": 5131,
    "spaces": {"X": {"type": "sup", "n": 8}},
    "vectors": {"one": {"kind": "constant", "space": "X", "value": 1}},
    "maps": {
      "phi": {"kind": "square", "domain": "X"},
      "psi": {"kind": "rank_one", "codomain": "X", "vector": "one",
              "functional": {"kind": "pullback", "map": "phi", "dual": {"kind": "uniform_probability", "space": "X"}}}
    },
    "ops": [
      {"id": "defect", "op": "defect", "phi": "phi", "psi": "psi"},
      {"id": "at_one", "op": "evaluate", "map": {"kind": "sum", "terms": ["phi", "psi"]}, "x": "one"},
      {"id": "hull", "op": "hull_distance", "phi": "phi", "psi": "psi", "z": "one", "K": 1,
       "combinations": 1000, "hints": ["one"], "budget": 4000}
    ]
  },
  "expected": {
    "defect": {"verdict": "DaugavetHolds", "defect": {"approx": 0, "tol": 1e-6},
               "witness": {"one_of": [[1, 1, 1, 1, 1, 1, 1, 1], [-1, -1, -1, -1, -1, -1, -1, -1]]}},
    "at_one": {"value": {"approx": 2, "tol": 1e-12}, "in_ball": true},
    "hull": {"holds": true, "max_residual": {"max": 1e-9}}
  }
})json",

    R"json({
  "name": "example-5.13-negative",
  "anchor": "Example 5.13",
  "summary": "With y = -1 the same pair has ||x^2 - <x^2, mu> 1|| <= 1: a certified defect of 1.",
  "construction": {
    "seed": 5132,
    "spaces": {"X": {"type": "sup", "n": 8}},
    "vectors": {"minus_one": {"kind": "constant", "space": "X", "value": -1}},
    "maps": {
      "phi": {"kind": "square", "domain": "X"},
      "psi": {"kind": "rank_one", "codomain": "X", "vector": "minus_one",
              "functional": {"kind": "pullback", "map": "phi", "dual": {"kind": "uniform_probability", "space": "X"}}}
    },
    "ops": [
      {"id": "defect", "op": "defect", "phi": "phi", "psi": "psi"},
      {"id": "local", "op": "local", "map": "phi", "budget": 2000, "context": {
        "W": [{"kind": "pullback", "map": "phi", "dual": {"kind": "uniform_probability", "space": "X"}}],
        "Delta": ["minus_one"]}}
    ]
  },
  "expected": {
    "defect": {"verdict": "DaugavetFails", "defect_lo": {"min": 0.999999}, "norm_sum.upper_bound": {"max": 1.000000001}},
    "local": {"overall": "Fails"}
  }
})json",

    R"json({
  "name": "lemma-5.14-l1",
  "anchor": "Lemma 5.14",
  "summary": "On L1 of a non-atomic measure, small-support atoms give ||y + omega Phi0(z)|| >= 2 - 2 eps for Phi0(f) = |f|.",
  "construction": {
    "seed": 514,
    "spaces": {"L": {"type": "uniform_l1", "n": 64}},
    "vectors": {"one": {"kind": "constant", "space": "L", "value": 1}},
    "functionals": {"integral": {"kind": "linear", "space": "L", "dual": {"kind": "integration", "space": "L"}}},
    "maps": {"abs": {"kind": "abs", "domain": "L"}, "conv": {"kind": "cyclic_convolution", "domain": "L"}},
    "ops": [
      {"id": "abs", "op": "l1_witness", "phi": "abs", "functional": "integral", "y": "one", "epsilon": 0.05},
      {"id": "conv", "op": "l1_witness", "phi": "conv", "functional": "integral", "y": "one", "epsilon": 0.05}
    ]
  },
  "expected": {
    "abs": {"found": true, "witness.meets_floor": true, "witness.recomputed_value": {"min": 1.9}, "witness.z": {"size": 64}},
    "conv": {"found": true, "witness.meets_floor": true}
  }
})json",

    R"json({
  "name": "admissibility-phi-star",
  "anchor": "Section 5.2, Phi*(f) = |f| * |f|",
  "summary": "Cyclic convolution maps arc supports of mass d to supports of mass at most 2d, so it is admissible; scattered supports break the bound.",
  "construction": {
    "seed": 52,
    "spaces": {"L": {"type": "uniform_l1", "n": 64}},
    "maps": {"conv": {"kind": "cyclic_convolution", "domain": "L"}, "abs": {"kind": "abs", "domain": "L"}},
    "ops": [
      {"id": "arc", "op": "admissibility", "map": "conv", "deltas": [0.015625, 0.03125, 0.0625], "shape": "arc"},
      {"id": "abs", "op": "admissibility", "map": "abs", "deltas": [0.015625, 0.03125, 0.0625]},
      {"id": "scattered", "op": "admissibility", "map": "conv", "deltas": [0.015625, 0.03125, 0.0625], "shape": "scattered"}
    ]
  },
  "expected": {
    "arc": {"status": "Admissible", "rows": {"size": 3}, "rows.*.ok": true},
    "abs": {"status": "Admissible"},
    "scattered": {"status": "NotAdmissible"}
  }
})json",

    R"json({
  "name": "thm-3.11-pipeline",
  "anchor": "Theorem 3.11",
  "summary": "Local Daugavet property plus small images on slices certify ||Phi + Psi|| >= 2 - 3 eps.",
  "construction": {
    "seed": 311,
    "budget": 2000,
    "spaces": {"X": {"type": "sup", "n": 4}, "R": {"type": "sup", "n": 1}},
    "vectors": {"y": [1, -1, 1, 1]},
    "functionals": {"w": {"kind": "product_sign", "space": "X", "i": 0, "j": 1}},
    "maps": {
      "cube": {"kind": "cube", "domain": "X"},
      "rank_one": {"kind": "rank_one", "functional": "w", "vector": "y", "codomain": "X"},
      "constant": {"kind": "constant", "domain": "X", "codomain": "X", "value": "y"},
      "line_id": {"kind": "identity", "domain": "R"},
      "jump": {"kind": "signed_jump"}
    },
    "contexts": {
      "cube": {"W": [{"kind": "constant", "space": "X", "value": 1}, "w"], "Delta": ["y"]},
      "line": {"W": [{"kind": "linear", "space": "R", "dual": [1]}], "Delta": [[1]]}
    },
    "ops": [
      {"id": "rank_one", "op": "t1_pipeline", "phi": "cube", "psi": "rank_one", "context": "cube", "epsilon": 0.05},
      {"id": "constant", "op": "t1_pipeline", "phi": "cube", "psi": "constant", "context": "cube", "epsilon": 0.05},
      {"id": "jump", "op": "t1_pipeline", "phi": "line_id", "psi": "jump", "context": "line", "epsilon": 0.1}
    ]
  },
  "expected": {
    "rank_one": {"certified": true, "lower_bound": {"min": 1.85}, "chain_floor": {"min": 1.85}},
    "constant": {"certified": true, "lower_bound": {"min": 1.85}},
    "jump": {"certified": false, "failed_stage": "small-image"}
  }
})json",

    R"json({
  "name": "thm-4.11-pipeline",
  "anchor": "Theorem 4.11",
  "summary": "Exposed slices of a weakly compact Psi plus slice continuity certify ||Phi + Psi|| >= 2 - 3 eps.",
  "construction": {
    "seed": 411,
    "budget": 2000,
    "spaces": {
      "X": {"type": "sup", "n": 4},
      "L1": {"type": "uniform_l1", "n": 4},
      "L2": {"type": "lp", "n": 4, "p": 2},
      "S": {"type": "direct_sum", "left": "L1", "right": "L2"}
    },
    "vectors": {"y": [1, -1, 1, 1]},
    "maps": {
      "cube": {"kind": "cube", "domain": "X"},
      "rank_one": {"kind": "rank_one", "functional": {"kind": "product_sign", "space": "X", "i": 0, "j": 1},
                   "vector": "y", "codomain": "X"},
      "P": {"kind": "linear", "domain": "X", "codomain": "X",
            "matrix": [[1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0]]},
      "factor": {"kind": "compose_linear", "outer": "P", "inner": "cube"},
      "proj": {"kind": "summand_projection", "domain": "S"},
      "shift": {"kind": "shift", "domain": "S"}
    },
    "families": {
      "rank_one": {"base": "rank_one", "functionals": [], "epsilons": []},
      "cube": {"base": "cube", "functionals": [], "epsilons": []},
      "proj": {"base": "proj", "functionals": [], "epsilons": []}
    },
    "ops": [
      {"id": "rank_one", "op": "weakly_compact", "phi": "cube", "upsilon": "rank_one", "psi": "rank_one", "epsilon": 0.05},
      {"id": "rank_one_alt", "op": "weakly_compact", "phi": "cube", "upsilon": "rank_one", "psi": "rank_one",
       "epsilon": 0.05, "alternative": true},
      {"id": "linear_factor", "op": "weakly_compact", "phi": "cube", "upsilon": "cube", "psi": "factor", "epsilon": 0.05},
      {"id": "shift", "op": "weakly_compact", "phi": "proj", "upsilon": "proj", "psi": "shift", "epsilon": 0.05}
    ]
  },
  "expected": {
    "rank_one": {"certified": true, "lower_bound": {"min": 1.85}},
    "rank_one_alt": {"certified": true, "lower_bound": {"min": 1.85}},
    "linear_factor": {"certified": true, "lower_bound": {"min": 1.85}, "continuity.rows.0.candidate": "y*P"},
    "shift": {"verdict": "Inconclusive", "failed_stage": "slice-continuity"}
  }
})json",

    R"json({
  "name": "lemma-2.4-modulus",
  "anchor": "Lemma 2.4",
  "summary": "|c| <= 1 and Re c >= 1 - eps force |1 - c| <= sqrt(2 eps), with equality on the boundary.",
  "construction": {
    "seed": 24,
    "ops": [
      {"id": "eps_0.01", "op": "modulus_bound", "epsilon": 0.01, "count": 10000},
      {"id": "eps_0.1", "op": "modulus_bound", "epsilon": 0.1, "count": 10000},
      {"id": "eps_0.5", "op": "modulus_bound", "epsilon": 0.5, "count": 10000}
    ]
  },
  "expected": {
    "eps_0.01": {"samples": 10000, "max_excess": {"max": 0}, "boundary_gap": {"max": 1e-12}},
    "eps_0.1": {"samples": 10000, "max_excess": {"max": 0}, "boundary_gap": {"max": 1e-12}},
    "eps_0.5": {"samples": 10000, "max_excess": {"max": 0}, "boundary_gap": {"max": 1e-12}}
  }
})json",

    R"json({
  "name": "remark-3.4-multilinear",
  "anchor": "Remark 3.4",
  "summary": "For multilinear maps, rotating a slice equals rotating one argument.",
  "construction": {
    "seed": 34,
    "budget": 1000,
    "maps": {
      "product": {"kind": "bilinear", "shape": [1, 1], "out_dim": 1, "tensor": [1]},
      "pairing": {"kind": "bilinear", "shape": [2, 2], "out_dim": 2, "tensor": [1, 0, 0, 0, 0, 0.5, 0.5, 0]}
    },
    "ops": [
      {"id": "product", "op": "rotation", "map": "product", "functionals": [[1]], "epsilons": [0.1, 0.5]},
      {"id": "pairing", "op": "rotation", "map": "pairing", "functionals": [[1, 0], [0, 1]], "epsilons": [0.2]},
      {"id": "complex", "op": "rotation", "grid": {"complex": 8},
       "map": {"kind": "bilinear", "shape": [1, 1], "out_dim": 1, "tensor": [[0, 1]], "field": "complex"},
       "functionals": [[1]], "epsilons": [0.3]}
    ]
  },
  "expected": {
    "product": {"status": "HoldsOnGrid", "mismatches": 0},
    "pairing": {"status": "HoldsOnGrid", "mismatches": 0},
    "complex": {"status": "HoldsOnGrid", "mismatches": 0}
  }
})json",

    R"json({
  "name": "example-3.5-linear-factor",
  "anchor": "Example 3.5",
  "summary": "Psi = P o Phi for a bounded linear P is strongly and weakly slice continuous w.r.t. Phi via the functional y* P.",
  "construction": {
    "seed": 35,
    "budget": 3000,
    "spaces": {"X": {"type": "sup", "n": 3}},
    "maps": {
      "cube": {"kind": "cube", "domain": "X"},
      "P": {"kind": "linear", "domain": "X", "codomain": "X",
            "matrix": [[0.75, 0.25, -0.25], [0.25, 0.375, -0.125], [-0.25, -0.125, 0.375]]},
      "psi": {"kind": "compose_linear", "outer": "P", "inner": "cube"}
    },
    "families": {
      "targets": {"base": "psi", "epsilons": [0.1, 0.3],
                  "functionals": [{"kind": "coordinate", "space": "X", "index": 0},
                                  {"kind": "coordinate", "space": "X", "index": 2, "scale": -1}]},
      "weak_targets": {"base": "psi", "epsilons": [0.1, 0.3], "kind": "weak",
                       "functionals": [{"kind": "coordinate", "space": "X", "index": 0}]},
      "cube": {"base": "cube", "functionals": [], "epsilons": []},
      "weak_cube": {"base": "cube", "functionals": [], "epsilons": [], "kind": "weak"}
    },
    "ops": [
      {"id": "strong", "op": "strong_continuity", "targets": "targets", "candidates": "cube"},
      {"id": "weak", "op": "weak_continuity", "targets": "weak_targets", "candidates": "weak_cube"}
    ]
  },
  "expected": {
    "strong": {"overall": "HoldsOnGrid", "rows": {"size": 4}, "rows.*.candidate": "y*P"},
    "weak": {"overall": "HoldsOnGrid"}
  }
})json",

    R"json({
  "name": "quotient-maps",
  "anchor": "Remark 5.7(1)",
  "summary": "Maps sending the ball onto the ball: projections and the cube are onto, the square and scaled maps are not.",
  "construction": {
    "seed": 57,
    "budget": 2000,
    "spaces": {
      "L": {"type": "uniform_l1", "n": 4},
      "S": {"type": "direct_sum", "left": "L", "right": "L"},
      "X": {"type": "sup", "n": 3}
    },
    "ops": [
      {"id": "projection", "op": "quotient", "map": {"kind": "summand_projection", "domain": "S"}},
      {"id": "cube", "op": "quotient", "map": {"kind": "cube", "domain": "X"}},
      {"id": "square", "op": "quotient", "map": {"kind": "square", "domain": "X"}},
      {"id": "half_identity", "op": "quotient", "map": {"kind": "scaled", "by": 0.5, "map": {"kind": "identity", "domain": "X"}}}
    ]
  },
  "expected": {
    "projection": {"status": "Surjective", "max_roundtrip_error": {"max": 1e-9}},
    "cube": {"status": "Surjective"},
    "square": {"status": "NotSurjective", "witness": [-1, -1, -1], "witness_gap": {"approx": 1, "tol": 1e-12}},
    "half_identity": {"status": "NotSurjective"}
  }
})json",

    R"json({
  "name": "thm-2.5-roundtrip",
  "anchor": "Theorem 2.5",
  "summary": "When the Daugavet equation holds for Phi + x' (x) y, slice witnesses exist and certify ||Phi + x' (x) y|| >= 2 - (2 + sqrt 2) eps.",
  "construction": {
    "seed": 25,
    "budget": 4000,
    "spaces": {"X": {"type": "sup", "n": 4}},
    "vectors": {"y": [1, -1, 1, 1], "one": {"kind": "constant", "space": "X", "value": 1}},
    "functionals": {
      "w": {"kind": "product_sign", "space": "X", "i": 0, "j": 1},
      "avg": {"kind": "linear", "space": "X", "dual": {"kind": "uniform_probability", "space": "X"}},
      "sq_avg": {"kind": "pullback", "map": {"kind": "square", "domain": "X"},
                 "dual": {"kind": "uniform_probability", "space": "X"}}
    },
    "maps": {"cube": {"kind": "cube", "domain": "X"}, "square": {"kind": "square", "domain": "X"}},
    "ops": [
      {"id": "cube_product_sign", "op": "certify", "phi": "cube", "functional": "w", "y": "y", "epsilon": 0.05},
      {"id": "cube_average", "op": "certify", "phi": "cube", "functional": "avg", "y": "one", "epsilon": 0.05},
      {"id": "square_ones", "op": "certify", "phi": "square", "functional": "sq_avg", "y": "one", "epsilon": 0.05}
    ]
  },
  "expected": {
    "cube_product_sign": {"search.found": true, "certified.value": {"min": 1.8792893218813452}},
    "cube_average": {"search.found": true, "certified.value": {"min": 1.8792893218813452}},
    "square_ones": {"search.found": true, "certified.value": {"min": 1.8792893218813452}}
  }
})json",
};

std::vector<Scenario> parse_all() {
    std::vector<Scenario> out;
    for (const char* text : kScenarios) out.push_back(scenario_from_json(Json::parse(text)));
    return out;
}

}  // namespace

const std::vector<Scenario>& builtin_scenarios() {
    static const std::vector<Scenario> all = parse_all();
    return all;
}

const Scenario* find_scenario(const std::string& name) {
    for (const auto& s : builtin_scenarios()) {
        if (s.name == name) return &s;
        for (const auto& a : s.aliases)
            if (a == name) return &s;
    }
    return nullptr;
}

}  // namespace slicelab
