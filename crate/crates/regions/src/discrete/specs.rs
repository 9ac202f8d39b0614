//! Registered inequality systems for the discrete cognitive interference
//! channel, each evaluated on an explicit joint distribution extended by a
//! memoryless channel.

use super::pmf::{DiscreteChannel, InfoCache, JointPmf};
use super::DiscreteError;
use crate::geometry::{HalfPlaneSystem, Row};

/// One information term with a sign: either conditional mutual information
/// or conditional entropy over variable sets.
#[derive(Debug, Clone)]
pub enum Term {
    Mi {
        a: &'static [&'static str],
        b: &'static [&'static str],
        cond: &'static [&'static str],
    },
    CondEntropy {
        a: &'static [&'static str],
        cond: &'static [&'static str],
    },
}

impl Term {
    fn eval(&self, cache: &mut InfoCache<'_>) -> Result<f64, DiscreteError> {
        match self {
            Term::Mi { a, b, cond } => cache.mutual_information(a, b, cond),
            Term::CondEntropy { a, cond } => cache.cond_entropy(a, cond),
        }
    }
}

/// `sum(rate coefficients) <= sum(signed terms)`.
#[derive(Debug, Clone)]
pub struct SpecRow {
    pub rates: &'static [(&'static str, f64)],
    pub terms: Vec<(f64, Term)>,
}

/// Identifier of a registered inequality block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecId {
    /// Post-elimination inner bound with cross binning (five rows).
    InnerBound,
    /// Pre-elimination inner bound, simultaneous decoding.
    InnerBoundPre,
    /// Pre-elimination inner bound, sequential decoding.
    InnerBoundSequential,
    /// Single-auxiliary outer bound.
    OuterBound,
    /// Strong-interference capacity rows.
    StrongInterference,
    /// Weak-interference capacity rows.
    WeakInterference,
    /// Wu-style inner bound (superposition plus binning).
    WuRegion,
    /// Rate-splitting-at-two inner bound, pre-elimination.
    JiangXin,
    /// Rate-splitting-at-both inner bound with common relaying.
    Maric,
    /// Same scheme without splitting the primary message.
    MaricNoSplit,
    /// Broadcast cross-binning region.
    Marton,
    /// Broadcast reduction of the sequential scheme, pre-elimination.
    MartonPreElimination,
    /// Broadcast reduction after elimination.
    MartonEquiv,
    /// Semi-deterministic capacity rows.
    SemiDeterministic,
}

impl SpecId {
    pub fn parse(s: &str) -> Option<SpecId> {
        Some(match s {
            "inner" => SpecId::InnerBound,
            "inner-pre" => SpecId::InnerBoundPre,
            "inner-seq" => SpecId::InnerBoundSequential,
            "outer" => SpecId::OuterBound,
            "strong" => SpecId::StrongInterference,
            "weak" => SpecId::WeakInterference,
            "wu" => SpecId::WuRegion,
            "jiang-xin" => SpecId::JiangXin,
            "maric" => SpecId::Maric,
            "maric-nosplit" => SpecId::MaricNoSplit,
            "marton" => SpecId::Marton,
            "marton-pre" => SpecId::MartonPreElimination,
            "marton-equiv" => SpecId::MartonEquiv,
            "semidet" => SpecId::SemiDeterministic,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            SpecId::InnerBound => "inner",
            SpecId::InnerBoundPre => "inner-pre",
            SpecId::InnerBoundSequential => "inner-seq",
            SpecId::OuterBound => "outer",
            SpecId::StrongInterference => "strong",
            SpecId::WeakInterference => "weak",
            SpecId::WuRegion => "wu",
            SpecId::JiangXin => "jiang-xin",
            SpecId::Maric => "maric",
            SpecId::MaricNoSplit => "maric-nosplit",
            SpecId::Marton => "marton",
            SpecId::MartonPreElimination => "marton-pre",
            SpecId::MartonEquiv => "marton-equiv",
            SpecId::SemiDeterministic => "semidet",
        }
    }
}

/// A symbolic region: rate variables, rows, and sum couplings such as
/// `R1 = R11 + R10` for systems that still need elimination.
#[derive(Debug, Clone)]
pub struct RegionSpec {
    pub id: SpecId,
    pub rate_vars: &'static [&'static str],
    pub rows: Vec<SpecRow>,
    /// `(total, parts)`: adjoined as equalities before projection.
    pub splits: &'static [(&'static str, &'static [&'static str])],
    /// Distribution variables the spec needs (beyond x1, x2).
    pub auxiliaries: &'static [&'static str],
}

/// A spec evaluated on a concrete distribution: the numeric system plus the
/// indices of rows whose right-hand side came out negative (those make the
/// polygon empty; the union over distributions simply skips them).
#[derive(Debug, Clone)]
pub struct EvaluatedRegion {
    pub system: HalfPlaneSystem,
    pub negative_rows: Vec<usize>,
}

macro_rules! mi {
    ($a:expr ; $b:expr) => {
        Term::Mi { a: $a, b: $b, cond: &[] }
    };
    ($a:expr ; $b:expr ; $c:expr) => {
        Term::Mi { a: $a, b: $b, cond: $c }
    };
}

macro_rules! ent {
    ($a:expr ; $c:expr) => {
        Term::CondEntropy { a: $a, cond: $c }
    };
}

pub fn region_spec(id: SpecId) -> RegionSpec {
    match id {
        SpecId::InnerBound => RegionSpec {
            id,
            rate_vars: &["R1", "R2"],
            rows: vec![
                SpecRow {
                    rates: &[("R1", 1.0)],
                    terms: vec![(1.0, mi!(&["v11", "u11", "v20", "u10"]; &["y1"]))],
                },
                SpecRow {
                    rates: &[("R2", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["v22", "v20"]; &["y2"]; &["u10"])),
                        (-1.0, mi!(&["v22", "v20"]; &["u11"]; &["u10"])),
                    ],
                },
                SpecRow {
                    rates: &[("R1", 1.0), ("R2", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["v11", "u11"]; &["y1"]; &["v20", "u10"])),
                        (1.0, mi!(&["v22", "v20", "u10"]; &["y2"])),
                        (-1.0, mi!(&["v11"]; &["v22"]; &["v20", "u10"])),
                        (-1.0, mi!(&["u11"]; &["v22"]; &["v11", "v20", "u10"])),
                    ],
                },
                SpecRow {
                    rates: &[("R1", 1.0), ("R2", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["v11", "u11", "v20", "u10"]; &["y1"])),
                        (1.0, mi!(&["v22"]; &["y2"]; &["v20", "u10"])),
                        (-1.0, mi!(&["v11"]; &["v22"]; &["v20", "u10"])),
                        (-1.0, mi!(&["u11"]; &["v22"]; &["v11", "v20", "u10"])),
                    ],
                },
                SpecRow {
                    rates: &[("R1", 1.0), ("R2", 2.0)],
                    terms: vec![
                        (1.0, mi!(&["v11", "u11", "v20"]; &["y1"]; &["u10"])),
                        (1.0, mi!(&["v22"]; &["y2"]; &["v20", "u10"])),
                        (1.0, mi!(&["v22", "v20", "u10"]; &["y2"])),
                        (-1.0, mi!(&["v11"]; &["v22"]; &["v20", "u10"])),
                        (-1.0, mi!(&["u11"]; &["v22"]; &["v11", "v20", "u10"])),
                        (-1.0, mi!(&["v22", "v20"]; &["u11"]; &["u10"])),
                    ],
                },
            ],
            splits: &[],
            auxiliaries: &["u10", "u11", "v11", "v20", "v22"],
        },
        SpecId::InnerBoundPre => RegionSpec {
            id,
            rate_vars: &["R1", "R2", "R10", "R11", "R20", "R22", "L11", "L20", "L22"],
            rows: shared_encoding_rows()
                .into_iter()
                .chain(vec![
                    SpecRow {
                        rates: &[("L11", 1.0)],
                        terms: vec![
                            (1.0, mi!(&["v11", "u11"]; &["y1"]; &["v20", "u10"])),
                            (1.0, mi!(&["v11", "v20"]; &["u11"]; &["u10"])),
                        ],
                    },
                    SpecRow {
                        rates: &[("L11", 1.0), ("L20", 1.0)],
                        terms: vec![
                            (1.0, mi!(&["v11", "u11", "v20"]; &["y1"]; &["u10"])),
                            (1.0, mi!(&["v11", "v20"]; &["u11"]; &["u10"])),
                        ],
                    },
                    SpecRow {
                        rates: &[("L11", 1.0), ("L20", 1.0), ("R10", 1.0)],
                        terms: vec![
                            (1.0, mi!(&["v11", "u11", "v20", "u10"]; &["y1"])),
                            (1.0, mi!(&["v11", "v20"]; &["u11"]; &["u10"])),
                        ],
                    },
                    SpecRow {
                        rates: &[("L22", 1.0)],
                        terms: vec![(1.0, mi!(&["v22"]; &["y2"]; &["v20", "u10"]))],
                    },
                    SpecRow {
                        rates: &[("L22", 1.0), ("L20", 1.0)],
                        terms: vec![(1.0, mi!(&["v22", "v20"]; &["y2"]; &["u10"]))],
                    },
                    SpecRow {
                        rates: &[("L22", 1.0), ("L20", 1.0), ("R10", 1.0)],
                        terms: vec![(1.0, mi!(&["v22", "v20", "u10"]; &["y2"]))],
                    },
                ])
                .collect(),
            splits: &[("R1", &["R11", "R10"]), ("R2", &["R22", "R20"])],
            auxiliaries: &["u10", "u11", "v11", "v20", "v22"],
        },
        SpecId::InnerBoundSequential => RegionSpec {
            id,
            rate_vars: &["R1", "R2", "R10", "R11", "R20", "R22", "L11", "L20", "L22"],
            rows: shared_encoding_rows()
                .into_iter()
                .chain(vec![
                    SpecRow {
                        rates: &[("L20", 1.0)],
                        terms: vec![(1.0, mi!(&["v20"]; &["y1"]; &["u10"]))],
                    },
                    SpecRow {
                        rates: &[("L20", 1.0)],
                        terms: vec![(1.0, mi!(&["v20"]; &["y2"]; &["u10"]))],
                    },
                    SpecRow {
                        rates: &[("R10", 1.0), ("L20", 1.0)],
                        terms: vec![(1.0, mi!(&["v20", "u10"]; &["y1"]))],
                    },
                    SpecRow {
                        rates: &[("R10", 1.0), ("L20", 1.0)],
                        terms: vec![(1.0, mi!(&["v20", "u10"]; &["y2"]))],
                    },
                    SpecRow {
                        rates: &[("L11", 1.0)],
                        terms: vec![
                            (1.0, mi!(&["v11", "u11"]; &["y1"]; &["v20", "u10"])),
                            (1.0, mi!(&["v11", "v20"]; &["u11"]; &["u10"])),
                        ],
                    },
                    SpecRow {
                        rates: &[("L22", 1.0)],
                        terms: vec![(1.0, mi!(&["v22"]; &["y2"]; &["v20", "u10"]))],
                    },
                ])
                .collect(),
            splits: &[("R1", &["R11", "R10"]), ("R2", &["R22", "R20"])],
            auxiliaries: &["u10", "u11", "v11", "v20", "v22"],
        },
        SpecId::OuterBound => RegionSpec {
            id,
            rate_vars: &["R1", "R2"],
            rows: vec![
                SpecRow {
                    rates: &[("R1", 1.0)],
                    terms: vec![(1.0, mi!(&["x1", "u"]; &["y1"]))],
                },
                SpecRow {
                    rates: &[("R2", 1.0)],
                    terms: vec![(1.0, mi!(&["x2"]; &["y2"]; &["x1"]))],
                },
                SpecRow {
                    rates: &[("R1", 1.0), ("R2", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["x1", "u"]; &["y1"])),
                        (1.0, mi!(&["x2"]; &["y2"]; &["x1", "u"])),
                    ],
                },
            ],
            splits: &[],
            auxiliaries: &["u"],
        },
        SpecId::StrongInterference => RegionSpec {
            id,
            rate_vars: &["R1", "R2"],
            rows: vec![
                SpecRow {
                    rates: &[("R2", 1.0)],
                    terms: vec![(1.0, mi!(&["x2"]; &["y2"]; &["x1"]))],
                },
                SpecRow {
                    rates: &[("R1", 1.0), ("R2", 1.0)],
                    terms: vec![(1.0, mi!(&["x1", "x2"]; &["y1"]))],
                },
            ],
            splits: &[],
            auxiliaries: &[],
        },
        SpecId::WeakInterference => RegionSpec {
            id,
            rate_vars: &["R1", "R2"],
            rows: vec![
                SpecRow {
                    rates: &[("R1", 1.0)],
                    terms: vec![(1.0, mi!(&["u", "x1"]; &["y1"]))],
                },
                SpecRow {
                    rates: &[("R2", 1.0)],
                    terms: vec![(1.0, mi!(&["x2"]; &["y2"]; &["u", "x1"]))],
                },
            ],
            splits: &[],
            auxiliaries: &["u"],
        },
        SpecId::WuRegion => RegionSpec {
            id,
            rate_vars: &["R1", "R2"],
            rows: vec![
                SpecRow {
                    rates: &[("R1", 1.0)],
                    terms: vec![(1.0, mi!(&["u", "x1"]; &["y1"]))],
                },
                SpecRow {
                    rates: &[("R2", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["v"]; &["y2"])),
                        (-1.0, mi!(&["v"]; &["u", "x1"])),
                    ],
                },
            ],
            splits: &[],
            auxiliaries: &["u", "v"],
        },
        SpecId::JiangXin => RegionSpec {
            id,
            rate_vars: &["R1", "R2", "R20", "R22"],
            rows: vec![
                SpecRow {
                    rates: &[("R1", 1.0)],
                    terms: vec![(1.0, mi!(&["w"]; &["y1", "u"]; &["q"]))],
                },
                SpecRow {
                    rates: &[("R1", 1.0), ("R20", 1.0)],
                    terms: vec![(1.0, mi!(&["w", "u"]; &["y1"]; &["q"]))],
                },
                SpecRow {
                    rates: &[("R20", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["u"]; &["y2", "v"]; &["q"])),
                        (-1.0, mi!(&["u"]; &["w"]; &["q"])),
                    ],
                },
                SpecRow {
                    rates: &[("R22", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["v"]; &["y2", "u"]; &["q"])),
                        (-1.0, mi!(&["v"]; &["w"]; &["q"])),
                    ],
                },
                SpecRow {
                    rates: &[("R20", 1.0), ("R22", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["u", "v"]; &["y2"]; &["q"])),
                        (1.0, mi!(&["u"]; &["v"]; &["q"])),
                        (-1.0, mi!(&["u"]; &["w"]; &["q"])),
                        (-1.0, mi!(&["v"]; &["w"]; &["q"])),
                    ],
                },
            ],
            splits: &[("R2", &["R22", "R20"])],
            auxiliaries: &["q", "w", "u", "v"],
        },
        SpecId::Maric => RegionSpec {
            id,
            rate_vars: &["R1", "R2", "R1a", "R1b", "R2a", "R2c"],
            rows: vec![
                SpecRow {
                    rates: &[("R1", 1.0)],
                    terms: vec![(1.0, mi!(&["x1a", "x1b"]; &["y1", "u2c"]; &["q"]))],
                },
                SpecRow {
                    rates: &[("R1", 1.0), ("R2c", 1.0)],
                    terms: vec![(1.0, mi!(&["x1a", "x1b", "u2c"]; &["y1"]; &["q"]))],
                },
                SpecRow {
                    rates: &[("R1b", 1.0)],
                    terms: vec![(1.0, mi!(&["x1b"]; &["y1", "u2c"]; &["x1a", "q"]))],
                },
                SpecRow {
                    rates: &[("R1b", 1.0), ("R2c", 1.0)],
                    terms: vec![(1.0, mi!(&["x1b", "u2c"]; &["y1"]; &["x1a", "q"]))],
                },
                SpecRow {
                    rates: &[("R2a", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["u2a"]; &["y2"]; &["u2c", "q"])),
                        (-1.0, mi!(&["u2a"]; &["x1a", "x1b"]; &["u2c", "q"])),
                    ],
                },
                SpecRow {
                    rates: &[("R2", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["u2c", "u2a"]; &["y2"]; &["q"])),
                        (-1.0, mi!(&["u2c", "u2a"]; &["x1a", "x1b"]; &["q"])),
                    ],
                },
            ],
            splits: &[("R1", &["R1a", "R1b"]), ("R2", &["R2a", "R2c"])],
            auxiliaries: &["q", "x1a", "x1b", "u2c", "u2a"],
        },
        SpecId::MaricNoSplit => RegionSpec {
            id,
            rate_vars: &["R1", "R2", "R2a", "R2c"],
            rows: vec![
                SpecRow {
                    rates: &[("R1", 1.0)],
                    terms: vec![(1.0, mi!(&["w"]; &["y1", "u2c"]; &["q"]))],
                },
                SpecRow {
                    rates: &[("R1", 1.0), ("R2c", 1.0)],
                    terms: vec![(1.0, mi!(&["w", "u2c"]; &["y1"]; &["q"]))],
                },
                SpecRow {
                    rates: &[("R2a", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["u2a"]; &["y2"]; &["u2c", "q"])),
                        (-1.0, mi!(&["u2a"]; &["w"]; &["u2c", "q"])),
                    ],
                },
                SpecRow {
                    rates: &[("R2", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["u2c", "u2a"]; &["y2"]; &["q"])),
                        (-1.0, mi!(&["u2c", "u2a"]; &["w"]; &["q"])),
                    ],
                },
            ],
            splits: &[("R2", &["R2a", "R2c"])],
            auxiliaries: &["q", "w", "u2c", "u2a"],
        },
        SpecId::Marton => RegionSpec {
            id,
            rate_vars: &["R1", "R2"],
            rows: vec![
                SpecRow {
                    rates: &[("R1", 1.0)],
                    terms: vec![(1.0, mi!(&["w", "v1"]; &["y1"]))],
                },
                SpecRow {
                    rates: &[("R2", 1.0)],
                    terms: vec![(1.0, mi!(&["w", "v2"]; &["y2"]))],
                },
                SpecRow {
                    rates: &[("R1", 1.0), ("R2", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["w"]; &["y1"])),
                        (1.0, mi!(&["v1"]; &["y1"]; &["w"])),
                        (1.0, mi!(&["v2"]; &["y2"]; &["w"])),
                        (-1.0, mi!(&["v1"]; &["v2"]; &["w"])),
                    ],
                },
                SpecRow {
                    rates: &[("R1", 1.0), ("R2", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["w"]; &["y2"])),
                        (1.0, mi!(&["v1"]; &["y1"]; &["w"])),
                        (1.0, mi!(&["v2"]; &["y2"]; &["w"])),
                        (-1.0, mi!(&["v1"]; &["v2"]; &["w"])),
                    ],
                },
            ],
            splits: &[],
            auxiliaries: &["w", "v1", "v2"],
        },
        SpecId::MartonPreElimination => RegionSpec {
            id,
            rate_vars: &["R1", "R2", "R10", "R11", "R20", "R22", "L11", "L20", "L22"],
            rows: vec![
                SpecRow {
                    rates: &[("R20", 1.0), ("L20", -1.0)],
                    terms: vec![],
                },
                SpecRow {
                    rates: &[("R11", 1.0), ("R22", 1.0), ("L11", -1.0), ("L22", -1.0)],
                    terms: vec![(-1.0, mi!(&["v1"]; &["v2"]; &["w"]))],
                },
                SpecRow {
                    rates: &[("R10", 1.0), ("L20", 1.0)],
                    terms: vec![(1.0, mi!(&["w"]; &["y1"]))],
                },
                SpecRow {
                    rates: &[("R10", 1.0), ("L20", 1.0)],
                    terms: vec![(1.0, mi!(&["w"]; &["y2"]))],
                },
                SpecRow {
                    rates: &[("R11", 1.0), ("L11", -1.0)],
                    terms: vec![],
                },
                SpecRow {
                    rates: &[("L11", 1.0)],
                    terms: vec![(1.0, mi!(&["v1"]; &["y1"]; &["w"]))],
                },
                SpecRow {
                    rates: &[("R22", 1.0), ("L22", -1.0)],
                    terms: vec![],
                },
                SpecRow {
                    rates: &[("L22", 1.0)],
                    terms: vec![(1.0, mi!(&["v2"]; &["y2"]; &["w"]))],
                },
            ],
            splits: &[("R1", &["R11", "R10"]), ("R2", &["R22", "R20"])],
            auxiliaries: &["w", "v1", "v2"],
        },
        SpecId::MartonEquiv => RegionSpec {
            id,
            rate_vars: &["R1", "R2"],
            rows: vec![
                SpecRow {
                    rates: &[("R1", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["v1"]; &["y1"]; &["w"])),
                        (1.0, mi!(&["w"]; &["y1"])),
                    ],
                },
                SpecRow {
                    rates: &[("R1", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["v1"]; &["y1"]; &["w"])),
                        (1.0, mi!(&["w"]; &["y2"])),
                    ],
                },
                SpecRow {
                    rates: &[("R2", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["v2"]; &["y2"]; &["w"])),
                        (1.0, mi!(&["w"]; &["y1"])),
                    ],
                },
                SpecRow {
                    rates: &[("R2", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["v2"]; &["y2"]; &["w"])),
                        (1.0, mi!(&["w"]; &["y2"])),
                    ],
                },
                SpecRow {
                    rates: &[("R1", 1.0), ("R2", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["w"]; &["y1"])),
                        (1.0, mi!(&["v1"]; &["y1"]; &["w"])),
                        (1.0, mi!(&["v2"]; &["y2"]; &["w"])),
                        (-1.0, mi!(&["v1"]; &["v2"]; &["w"])),
                    ],
                },
                SpecRow {
                    rates: &[("R1", 1.0), ("R2", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["w"]; &["y2"])),
                        (1.0, mi!(&["v1"]; &["y1"]; &["w"])),
                        (1.0, mi!(&["v2"]; &["y2"]; &["w"])),
                        (-1.0, mi!(&["v1"]; &["v2"]; &["w"])),
                    ],
                },
            ],
            splits: &[],
            auxiliaries: &["w", "v1", "v2"],
        },
        SpecId::SemiDeterministic => RegionSpec {
            id,
            rate_vars: &["R1", "R2"],
            rows: vec![
                SpecRow {
                    rates: &[("R1", 1.0)],
                    terms: vec![(1.0, mi!(&["x1", "u"]; &["y1"]))],
                },
                SpecRow {
                    rates: &[("R2", 1.0)],
                    terms: vec![(1.0, ent!(&["y2"]; &["x1"]))],
                },
                SpecRow {
                    rates: &[("R1", 1.0), ("R2", 1.0)],
                    terms: vec![
                        (1.0, mi!(&["x1", "u"]; &["y1"])),
                        (1.0, ent!(&["y2"]; &["x1", "u"])),
                    ],
                },
            ],
            splits: &[],
            auxiliaries: &["u"],
        },
    }
}

/// Encoding-side rows shared by the simultaneous and sequential schemes:
/// binning losses at the cognitive encoder.
fn shared_encoding_rows() -> Vec<SpecRow> {
    vec![
        SpecRow {
            rates: &[("R20", 1.0), ("L20", -1.0)],
            terms: vec![(-1.0, mi!(&["v20"]; &["u11"]; &["u10"]))],
        },
        SpecRow {
            rates: &[("R11", 1.0), ("L11", -1.0)],
            terms: vec![(-1.0, mi!(&["v11"]; &["u11"]; &["v20", "u10"]))],
        },
        SpecRow {
            rates: &[("R22", 1.0), ("L22", -1.0)],
            terms: vec![(-1.0, mi!(&["v22"]; &["u11"]; &["v20", "u10"]))],
        },
        SpecRow {
            rates: &[("R11", 1.0), ("R22", 1.0), ("L11", -1.0), ("L22", -1.0)],
            terms: vec![
                (-1.0, mi!(&["v11"]; &["v22"]; &["v20", "u10"])),
                (-1.0, mi!(&["u11"]; &["v11", "v22"]; &["v20", "u10"])),
            ],
        },
    ]
}

/// Evaluate a registered spec on `p` extended by `ch`, producing a numeric
/// half-plane system over the spec's rate variables with the splits and
/// nonnegativity adjoined.
pub fn eval_region(
    spec: &RegionSpec,
    p: &JointPmf,
    ch: &DiscreteChannel,
) -> Result<EvaluatedRegion, DiscreteError> {
    for aux in spec.auxiliaries {
        if p.var_index(aux).is_err() {
            return Err(DiscreteError::MissingAuxiliary(aux.to_string()));
        }
    }
    let full = p.extend_with_channel(ch)?;
    let mut cache = InfoCache::new(&full);
    let vars: Vec<String> = spec.rate_vars.iter().map(|s| s.to_string()).collect();
    let mut rows = Vec::with_capacity(spec.rows.len());
    let mut negative_rows = Vec::new();
    for (k, row) in spec.rows.iter().enumerate() {
        let mut coeffs = vec![0.0; vars.len()];
        for (name, c) in row.rates {
            let i = vars
                .iter()
                .position(|v| v == name)
                .expect("rate variable registered");
            coeffs[i] = *c;
        }
        let mut rhs = 0.0;
        for (sign, term) in row.terms.iter() {
            rhs += sign * term.eval(&mut cache)?;
        }
        if rhs < -1e-12 && row.rates.iter().all(|&(_, c)| c >= 0.0) {
            negative_rows.push(k);
        }
        rows.push(Row::new(coeffs, rhs));
    }
    let mut system = HalfPlaneSystem::new(vars, rows)
        .map_err(|e| DiscreteError::InvalidTable(e.to_string()))?;
    for (total, parts) in spec.splits {
        system
            .push_equality(total, parts)
            .map_err(|e| DiscreteError::InvalidTable(e.to_string()))?;
    }
    system.push_nonnegativity();
    Ok(EvaluatedRegion {
        system,
        negative_rows,
    })
}

/// Regime conditions attached to the capacity propositions, checked on a
/// concrete distribution (never claimed universally).
pub fn regime_conditions(
    id: SpecId,
    p: &JointPmf,
    ch: &DiscreteChannel,
) -> Result<Vec<(String, f64)>, DiscreteError> {
    let full = p.extend_with_channel(ch)?;
    let mut out = Vec::new();
    match id {
        SpecId::StrongInterference => {
            let lhs = full.mutual_information(&["x2"], &["y2"], &["x1"])?;
            let rhs = full.mutual_information(&["x2"], &["y1"], &["x1"])?;
            out.push(("I(x2;y2|x1) <= I(x2;y1|x1)".to_string(), rhs - lhs));
            let lhs = full.mutual_information(&["x1", "x2"], &["y1"], &[])?;
            let rhs = full.mutual_information(&["x1", "x2"], &["y2"], &[])?;
            out.push(("I(x1x2;y1) <= I(x1x2;y2)".to_string(), rhs - lhs));
        }
        SpecId::WeakInterference => {
            let lhs = full.mutual_information(&["x1"], &["y1"], &[])?;
            let rhs = full.mutual_information(&["x1"], &["y2"], &[])?;
            out.push(("I(x1;y1) <= I(x1;y2)".to_string(), rhs - lhs));
            let lhs = full.mutual_information(&["u"], &["y1"], &["x1"])?;
            let rhs = full.mutual_information(&["u"], &["y2"], &["x1"])?;
            out.push(("I(u;y1|x1) <= I(u;y2|x1)".to_string(), rhs - lhs));
        }
        SpecId::SemiDeterministic => {
            let lhs = full.mutual_information(&["x1"], &["y1"], &[])?;
            let rhs = full.mutual_information(&["x1"], &["y2"], &[])?;
            out.push(("I(x1;y1) <= I(x1;y2)".to_string(), rhs - lhs));
        }
        _ => {}
    }
    Ok(out)
}
