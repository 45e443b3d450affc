//! Registered example arrangements and graphs.
//!
//! Arrangement fixtures carry the edge list of the graph they are meant to
//! realise, and [`Fixture::check`] re-derives it from the coordinates.

use crate::error::{Error, Result};
use crate::format::parse_rational;
use crate::geometry::{intersection_graph, Arrangement, AxisBox, RationalInterval};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixture {
    Arrangement {
        arrangement: Arrangement,
        expected_edges: Vec<(usize, usize)>,
    },
    Graph(Graph),
}

impl Fixture {
    pub fn graph(&self) -> Graph {
        match self {
            Fixture::Arrangement { arrangement, .. } => intersection_graph(arrangement),
            Fixture::Graph(g) => g.clone(),
        }
    }

    pub fn arrangement(&self) -> Option<&Arrangement> {
        match self {
            Fixture::Arrangement { arrangement, .. } => Some(arrangement),
            Fixture::Graph(_) => None,
        }
    }

    /// Whether the coordinates realise the registered edge list exactly.
    pub fn check(&self) -> bool {
        match self {
            Fixture::Arrangement {
                arrangement,
                expected_edges,
            } => {
                let mut want = expected_edges
                    .iter()
                    .map(|&(u, v)| (u.min(v), u.max(v)))
                    .collect::<Vec<_>>();
                want.sort_unstable();
                intersection_graph(arrangement).edges() == want
            }
            Fixture::Graph(_) => true,
        }
    }
}

/// Names accepted by [`load_fixture`]; the last two take a parameter.
pub const FIXTURE_NAMES: &[&str] = &[
    "z5",
    "fig38a",
    "fig38b",
    "fig38c",
    "fig134",
    "w4",
    "exposure",
    "k_partite <d>",
    "remark1 <r>",
];

/// Loads a fixture by name. Parametric fixtures take their parameter after
/// a space or a colon, e.g. `k_partite 3` or `remark1:2`.
pub fn load_fixture(name: &str) -> Result<Fixture> {
    let name = name.trim();
    let (base, param) = match name.split_once(|c: char| c == ' ' || c == ':') {
        Some((b, p)) => (b, Some(p.trim())),
        None => (name, None),
    };
    let param = |what: &str| -> Result<usize> {
        param
            .and_then(|p| p.parse::<usize>().ok())
            .filter(|&p| p >= 1)
            .ok_or_else(|| Error::InvalidParameter(format!("`{base}` needs a positive {what}")))
    };
    match (base, param) {
        ("z5", _) => Ok(z5()),
        ("fig38a", _) => Ok(fig38a()),
        ("fig38b", _) => Ok(fig38b()),
        ("fig38c", _) => Ok(Fixture::Graph(fig38c_graph())),
        ("fig134", _) => Ok(Fixture::Graph(fig134_graph())),
        ("w4", _) => Ok(Fixture::Graph(wheel4())),
        ("exposure", _) => Ok(exposure()),
        ("k_partite", _) => Ok(Fixture::Graph(Graph::complete_partite_pairs(param(
            "dimension",
        )?)?)),
        ("remark1", _) => remark1(param("copy count")?),
        _ => Err(Error::UnknownFixture {
            name: name.to_string(),
            available: FIXTURE_NAMES.join(", "),
        }),
    }
}

fn rational_box(sides: &[(&str, &str)]) -> AxisBox {
    let sides = sides
        .iter()
        .map(|(lo, hi)| {
            RationalInterval::new(parse_rational(lo).unwrap(), parse_rational(hi).unwrap())
                .expect("fixture interval")
        })
        .collect();
    AxisBox::new(sides).expect("fixture box")
}

fn int_arrangement(boxes: &[&[(i64, i64)]]) -> Arrangement {
    Arrangement::from_int_boxes(boxes[0].len(), boxes).expect("fixture arrangement")
}

/// Five 2-boxes whose intersection graph is the 5-cycle.
pub fn z5() -> Fixture {
    Fixture::Arrangement {
        arrangement: int_arrangement(&[
            &[(1, 4), (0, 5)],
            &[(0, 2), (3, 12)],
            &[(3, 6), (4, 6)],
            &[(5, 7), (5, 10)],
            &[(1, 6), (7, 9)],
        ]),
        expected_edges: vec![(1, 2), (2, 5), (5, 4), (4, 3), (3, 1)],
    }
}

const FIG38A_EDGES: &[(usize, usize)] = &[
    (3, 2),
    (2, 4),
    (4, 1),
    (1, 3),
    (7, 8),
    (8, 6),
    (6, 5),
    (5, 7),
    (6, 4),
    (4, 8),
    (8, 2),
    (2, 7),
    (7, 3),
    (3, 5),
    (5, 1),
    (1, 6),
];

/// Eight 2-boxes, 4-regular intersection graph with 16 edges.
pub fn fig38a() -> Fixture {
    Fixture::Arrangement {
        arrangement: int_arrangement(&[
            &[(5, 6), (0, 20)],
            &[(15, 16), (0, 20)],
            &[(0, 20), (5, 6)],
            &[(0, 20), (15, 16)],
            &[(2, 14), (1, 10)],
            &[(1, 8), (7, 18)],
            &[(12, 17), (4, 14)],
            &[(7, 19), (13, 19)],
        ]),
        expected_edges: FIG38A_EDGES.to_vec(),
    }
}

pub fn fig38a_graph() -> Graph {
    Graph::from_edges(8, FIG38A_EDGES).expect("fixture graph")
}

/// Eight 2-boxes, 17 intersecting pairs, maximum degree 5.
///
/// Box 5 starts at `y = 4`; at `y = 3` it would also touch box 8 and add an
/// eighteenth edge that the graph does not have.
pub fn fig38b() -> Fixture {
    Fixture::Arrangement {
        arrangement: Arrangement::new(
            2,
            vec![
                rational_box(&[("1", "8"), ("7", "9")]),
                rational_box(&[("0", "2"), ("3", "12")]),
                rational_box(&[("1", "4"), ("0", "5")]),
                rational_box(&[("3", "8"), ("2", "6")]),
                rational_box(&[("5", "7"), ("4", "10")]),
                rational_box(&[("3/2", "6"), ("4", "8")]),
                rational_box(&[("13/2", "9"), ("1", "11")]),
                rational_box(&[("-1", "10"), ("1/2", "7/2")]),
            ],
        )
        .expect("fixture arrangement"),
        expected_edges: vec![
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 1),
            (1, 6),
            (2, 6),
            (3, 6),
            (4, 6),
            (5, 6),
            (1, 7),
            (5, 7),
            (4, 7),
            (8, 3),
            (8, 4),
            (8, 2),
            (8, 7),
        ],
    }
}

/// The 4-regular graph above plus the edges `{1,2}` and `{6,7}`; no box
/// arrangement is registered for it.
pub fn fig38c_graph() -> Graph {
    let mut edges = FIG38A_EDGES.to_vec();
    edges.extend([(2, 1), (6, 7)]);
    Graph::from_edges(8, &edges).expect("fixture graph")
}

/// Complement of the drawn 26-edge graph, which is the registered graph.
const FIG134_COMPLEMENT_EDGES: &[(usize, usize)] = &[
    (1, 2),
    (1, 3),
    (1, 7),
    (1, 9),
    (2, 4),
    (2, 8),
    (2, 10),
    (3, 4),
    (3, 6),
    (3, 12),
    (4, 5),
    (4, 11),
    (5, 7),
    (5, 9),
    (5, 12),
    (6, 8),
    (6, 9),
    (6, 10),
    (7, 10),
    (7, 11),
    (8, 11),
    (8, 12),
    (9, 13),
    (10, 13),
    (11, 13),
    (12, 13),
];

/// 8-regular (2,3)-agreeable graph on 13 vertices with clique number 4.
pub fn fig134_graph() -> Graph {
    Graph::from_edges(13, FIG134_COMPLEMENT_EDGES)
        .expect("fixture graph")
        .complement()
}

/// Wheel with four spokes; vertex 5 is the hub.
pub fn wheel4() -> Graph {
    Graph::from_edges(
        5,
        &[
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 1),
            (1, 5),
            (2, 5),
            (3, 5),
            (4, 5),
        ],
    )
    .expect("fixture graph")
}

/// Six 2-boxes `A..F` (indices 1..6); `A` is exposed by the line `y = 5/2`.
pub fn exposure() -> Fixture {
    Fixture::Arrangement {
        arrangement: Arrangement::new(
            2,
            vec![
                rational_box(&[("1/2", "7/4"), ("5/2", "7/2")]),
                rational_box(&[("9/4", "17/4"), ("7/4", "4")]),
                rational_box(&[("5/2", "7/2"), ("1/2", "11/5")]),
                rational_box(&[("0", "4"), ("5/4", "2")]),
                rational_box(&[("1/2", "5/4"), ("1/2", "3/2")]),
                rational_box(&[("1", "2"), ("0", "3")]),
            ],
        )
        .expect("fixture arrangement"),
        expected_edges: vec![(1, 6), (2, 3), (2, 4), (3, 4), (4, 5), (4, 6), (5, 6)],
    }
}

/// `r` copies of `[0, 1]` and `r` copies of `[2, 3]`: two disjoint cliques.
pub fn remark1(r: usize) -> Result<Fixture> {
    let left: &[(i64, i64)] = &[(0, 1)];
    let right: &[(i64, i64)] = &[(2, 3)];
    let boxes: Vec<&[(i64, i64)]> = std::iter::repeat(left)
        .take(r)
        .chain(std::iter::repeat(right).take(r))
        .collect();
    let mut expected_edges = Vec::new();
    for offset in [0, r] {
        for i in 1..=r {
            for j in i + 1..=r {
                expected_edges.push((offset + i, offset + j));
            }
        }
    }
    Ok(Fixture::Arrangement {
        arrangement: Arrangement::from_int_boxes(1, &boxes)?,
        expected_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_arrangement_fixture_realises_its_edge_list() {
        for name in [
            "z5",
            "fig38a",
            "fig38b",
            "exposure",
            "remark1 1",
            "remark1 4",
        ] {
            assert!(load_fixture(name).unwrap().check(), "{name}");
        }
    }

    #[test]
    fn fig38a_arrangement_matches_drawn_graph() {
        assert_eq!(fig38a().graph(), fig38a_graph());
    }

    #[test]
    fn fig134_shape() {
        let g = fig134_graph();
        assert_eq!(g.n(), 13);
        assert_eq!(g.edge_count(), 52);
        assert!(g.degrees().iter().all(|&d| d == 8));
    }

    #[test]
    fn parametric_and_unknown_names() {
        let oct = load_fixture("k_partite 3").unwrap().graph();
        assert_eq!((oct.n(), oct.edge_count()), (6, 12));
        assert_eq!(load_fixture("k_partite:3").unwrap().graph(), oct);
        assert!(load_fixture("k_partite").is_err());
        match load_fixture("nope") {
            Err(Error::UnknownFixture { available, .. }) => assert!(available.contains("z5")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn graph_only_fixtures_have_no_arrangement() {
        assert!(load_fixture("fig38c").unwrap().arrangement().is_none());
        assert!(load_fixture("fig134").unwrap().arrangement().is_none());
    }
}
