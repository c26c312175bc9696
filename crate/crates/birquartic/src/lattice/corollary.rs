//! Case table for the exclusion arguments that rule out simultaneous
//! non-canonical centers: three points, two lines, and a line plus a point
//! off it. Each case records the maximal (−2)-curve configuration arising
//! on a resolved general hyperplane section through the relevant plane,
//! with centers' curves removed, together with its Dynkin classification.
//!
//! The table is data: each entry carries the graph, the expected component
//! labels, and the headline type. The verification that every entry
//! satisfies the star condition and classifies as expected lives in the
//! test suites, so additions are reviewed against the cited types.

use super::dynkin::DynkinLabel;
use super::CurveConfig;
use crate::{Error, Result};

/// One entry of the case table.
#[derive(Clone, Debug)]
pub struct CorollaryCase {
    pub label: &'static str,
    pub description: &'static str,
    pub graph: CurveConfig,
    /// Expected component labels, as a sorted multiset.
    pub expected: Vec<DynkinLabel>,
    /// The headline type cited for the case.
    pub cited: DynkinLabel,
}

fn entry(
    label: &'static str,
    description: &'static str,
    ids: &[&str],
    edges: &[(&str, &str)],
    expected: &[DynkinLabel],
    cited: DynkinLabel,
) -> CorollaryCase {
    let mut expected = expected.to_vec();
    expected.sort();
    CorollaryCase {
        label,
        description,
        graph: CurveConfig::simple(ids, edges),
        expected,
        cited,
    }
}

use DynkinLabel::{AffineD, AffineE6, AffineE7, A, D, E6, E7};

/// The full case table.
pub fn corollary_cases() -> Vec<CorollaryCase> {
    vec![
        // --- Three simultaneous point centers -------------------------------
        // Plane through the three nodes; section = three edge lines plus a
        // residual line. Curves over the centers are excluded.
        entry(
            "3pts-generic-residual-line",
            "three non-collinear nodes, residual line off the nodes, all three \
             crossings with the edge lines nodal",
            &["l", "f1", "f2", "f3", "l12", "l13", "l23"],
            &[
                ("l", "f1"),
                ("l", "f2"),
                ("l", "f3"),
                ("f1", "l12"),
                ("f2", "l13"),
                ("f3", "l23"),
            ],
            &[AffineE6],
            AffineE6,
        ),
        entry(
            "3pts-generic-no-extra-nodes",
            "three non-collinear nodes, residual line crossings all smooth: the \
             four line transforms form a star",
            &["l", "l12", "l13", "l23"],
            &[("l", "l12"), ("l", "l13"), ("l", "l23")],
            &[D(4)],
            D(4),
        ),
        entry(
            "3pts-residual-equals-side",
            "the residual line coincides with one edge line (multiplicity two); \
             one extra section node on it",
            &["l12", "l13", "l23", "fp"],
            &[("l12", "fp")],
            &[A(2), A(1), A(1)],
            A(2),
        ),
        entry(
            "3pts-residual-through-center",
            "the residual line passes through one of the three nodes and meets \
             the opposite edge line in a fourth node",
            &["l", "l12", "l13", "l23", "fp"],
            &[("l", "fp"), ("l23", "fp")],
            &[A(3), A(1), A(1)],
            A(3),
        ),
        // --- Two simultaneous line centers ----------------------------------
        // Plane spanned by the two lines; section = both lines plus a conic.
        entry(
            "2lines-irreducible-conic-through-P",
            "irreducible residual conic through the lines' crossing point, \
             which is a node; one more node on each line",
            &["q", "f1", "f2", "r1", "r2"],
            &[("q", "f2"), ("f2", "f1"), ("q", "r1"), ("q", "r2")],
            &[D(5)],
            D(5),
        ),
        entry(
            "2lines-irreducible-conic-avoiding-P",
            "irreducible residual conic missing the crossing point; all four \
             conic-line crossings nodal, crossing point nodal too",
            &["q", "r1", "r2", "r3", "r4", "fp"],
            &[("q", "r1"), ("q", "r2"), ("q", "r3"), ("q", "r4")],
            &[AffineD(4), A(1)],
            AffineD(4),
        ),
        entry(
            "2lines-line-pair-generic-node",
            "residual conic splits into two lines missing the crossing point; \
             their own crossing is a node",
            &["l3", "l4", "fq", "s1", "s2", "t1", "t2", "fp"],
            &[
                ("l3", "fq"),
                ("l4", "fq"),
                ("l3", "s1"),
                ("l3", "s2"),
                ("l4", "t1"),
                ("l4", "t2"),
            ],
            &[AffineD(6), A(1)],
            AffineD(6),
        ),
        entry(
            "2lines-line-pair-generic-smooth",
            "residual conic splits into two lines missing the crossing point; \
             their own crossing is smooth",
            &["l3", "l4", "s1", "s2", "t1", "t2", "fp"],
            &[
                ("l3", "l4"),
                ("l3", "s1"),
                ("l3", "s2"),
                ("l4", "t1"),
                ("l4", "t2"),
            ],
            &[AffineD(5), A(1)],
            AffineD(5),
        ),
        entry(
            "2lines-line-pair-meeting-on-center",
            "residual line pair meeting on one of the center lines (a chain of \
             length two appears there)",
            &["f1", "f2", "l3", "l4", "s2", "t2", "fp"],
            &[
                ("f1", "f2"),
                ("f2", "l3"),
                ("f2", "l4"),
                ("l3", "s2"),
                ("l4", "t2"),
            ],
            &[E6, A(1)],
            E6,
        ),
        entry(
            "2lines-line-pair-one-through-P",
            "one residual line through the crossing point, the other generic",
            &["p1", "p2", "l3", "fq", "l4", "t1", "t2"],
            &[
                ("p1", "p2"),
                ("p2", "l3"),
                ("l3", "fq"),
                ("fq", "l4"),
                ("l4", "t1"),
                ("l4", "t2"),
            ],
            &[D(7)],
            D(7),
        ),
        entry(
            "2lines-line-pair-both-through-P",
            "both residual lines through the crossing point: a chain of length \
             three at the point, both line transforms at its end",
            &["f1", "f2", "f3", "l3", "l4"],
            &[("f1", "f2"), ("f2", "f3"), ("f3", "l3"), ("f3", "l4")],
            &[D(5)],
            D(5),
        ),
        entry(
            "2lines-double-line-avoiding-P",
            "residual conic is a double line missing the crossing point: chains \
             of length two where it meets the center lines, one extra node",
            &["l", "a1", "a2", "b1", "b2", "c", "fp"],
            &[
                ("l", "a2"),
                ("a2", "a1"),
                ("l", "b2"),
                ("b2", "b1"),
                ("l", "c"),
            ],
            &[E6, A(1)],
            E6,
        ),
        entry(
            "2lines-double-line-through-P",
            "residual conic is a double line through the crossing point: a \
             chain of length three there plus two extra nodes on the line",
            &["f1", "f2", "f3", "l", "c1", "c2"],
            &[
                ("f1", "f2"),
                ("f2", "f3"),
                ("f3", "l"),
                ("l", "c1"),
                ("l", "c2"),
            ],
            &[D(6)],
            D(6),
        ),
        entry(
            "2lines-residual-contains-center-line",
            "the residual conic contains one center line again (multiplicity \
             two on it), the other residual component generic",
            &["p1", "p2", "q1", "q2", "l", "s", "r"],
            &[("p1", "p2"), ("q1", "q2"), ("q2", "l"), ("l", "s")],
            &[A(4), A(2), A(1)],
            A(4),
        ),
        entry(
            "2lines-residual-line-through-P",
            "the residual conic contains a center line and a line through the \
             crossing point",
            &["f1", "f2", "f3", "l", "r"],
            &[("f1", "f2"), ("f2", "f3"), ("f3", "l")],
            &[A(4), A(1)],
            A(4),
        ),
        entry(
            "2lines-triple-center-line",
            "the section is three times one center line plus the other: only \
             exceptional chains remain",
            &["f1", "f2", "f3", "g1", "g2", "h1", "h2"],
            &[("f1", "f2"), ("f2", "f3"), ("g1", "g2"), ("h1", "h2")],
            &[A(3), A(2), A(2)],
            A(3),
        ),
        // --- A line and a point off it --------------------------------------
        // Plane spanned by the line and the point; section = line + cubic.
        entry(
            "line-point-irreducible-cubic",
            "irreducible residual cubic singular at the point; all three \
             crossings with the center line nodal",
            &["c", "f1", "f2", "f3"],
            &[("c", "f1"), ("c", "f2"), ("c", "f3")],
            &[D(4)],
            D(4),
        ),
        entry(
            "line-point-conic-plus-line",
            "residual cubic = irreducible conic plus a line through the point",
            &["q", "r1", "r2", "fq", "l1", "s"],
            &[
                ("q", "r1"),
                ("q", "r2"),
                ("q", "fq"),
                ("fq", "l1"),
                ("l1", "s"),
            ],
            &[D(6)],
            D(6),
        ),
        entry(
            "line-point-three-concurrent-lines",
            "residual cubic = three lines through the point: each meets the \
             center line in one node",
            &["l1", "f1", "l2", "f2", "l3", "f3"],
            &[("l1", "f1"), ("l2", "f2"), ("l3", "f3")],
            &[A(2), A(2), A(2)],
            A(2),
        ),
        entry(
            "line-point-third-line-through-base-node",
            "two residual lines through the point, the third through a crossing \
             with the center line (a chain of length two there)",
            &["p1", "p2", "l1", "l3", "s23", "l2", "t2"],
            &[
                ("p1", "p2"),
                ("p2", "l1"),
                ("p2", "l3"),
                ("l3", "s23"),
                ("s23", "l2"),
                ("l2", "t2"),
            ],
            &[D(7)],
            D(7),
        ),
        entry(
            "line-point-three-lines-generic",
            "two residual lines through the point, the third generic with a \
             node of its own",
            &["t1", "l1", "s13", "l3", "r", "s23", "l2", "t2"],
            &[
                ("t1", "l1"),
                ("l1", "s13"),
                ("s13", "l3"),
                ("l3", "r"),
                ("l3", "s23"),
                ("s23", "l2"),
                ("l2", "t2"),
            ],
            &[AffineE7],
            AffineE7,
        ),
        entry(
            "line-point-double-line-plus-line",
            "residual cubic = a double line through the point plus a residual \
             line; chains of length two at both special crossings",
            &["p1", "p2", "l1", "q1", "q2", "l2", "t"],
            &[
                ("p1", "p2"),
                ("p2", "l1"),
                ("l1", "q2"),
                ("q2", "q1"),
                ("q2", "l2"),
                ("l2", "t"),
            ],
            &[E7],
            E7,
        ),
        entry(
            "line-point-double-center-line",
            "residual cubic = twice the center line plus a line through the \
             point; only chains survive",
            &["t1", "t2", "t3", "l1", "r1", "r2"],
            &[("t1", "t2"), ("t2", "t3"), ("t3", "l1"), ("r1", "r2")],
            &[A(4), A(2)],
            A(4),
        ),
        entry(
            "line-point-double-line-plus-center-line",
            "residual cubic = a double line through the point plus the center \
             line itself",
            &["t1", "t2", "t3", "l1", "fu", "fr"],
            &[("t1", "t2"), ("t2", "t3"), ("t3", "l1"), ("l1", "fu")],
            &[A(5), A(1)],
            A(5),
        ),
        entry(
            "line-point-triple-line",
            "residual cubic = three times one line through the point",
            &["t1", "t2", "t3", "l1", "u2", "u1", "fr"],
            &[
                ("t1", "t2"),
                ("t2", "t3"),
                ("t3", "l1"),
                ("l1", "u2"),
                ("u2", "u1"),
            ],
            &[A(6), A(1)],
            A(6),
        ),
    ]
}

/// Looks up one case by label.
pub fn corollary_case(label: &str) -> Result<CorollaryCase> {
    corollary_cases()
        .into_iter()
        .find(|c| c.label == label)
        .ok_or_else(|| Error::UnknownCaseLabel(label.to_owned()))
}

#[cfg(test)]
mod tests {
    use super::super::{check_star, classify_dynkin};
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn every_case_classifies_as_expected_and_satisfies_the_star_condition() {
        let cases = corollary_cases();
        assert!(cases.len() >= 20);
        for case in cases {
            let classes = classify_dynkin(&case.graph).unwrap();
            let mut labels: Vec<DynkinLabel> = classes.into_iter().map(|c| c.label).collect();
            labels.sort();
            assert_eq!(labels, case.expected, "case `{}`", case.label);
            assert!(
                labels.contains(&case.cited),
                "case `{}` does not realize its cited type {}",
                case.label,
                case.cited
            );
            assert!(
                check_star(&case.graph, &BTreeSet::new()).unwrap().holds(),
                "case `{}` violates the star condition",
                case.label
            );
        }
    }

    #[test]
    fn lookup_by_label() {
        assert!(corollary_case("3pts-generic-residual-line").is_ok());
        assert!(corollary_case("2lines-irreducible-conic-through-P").is_ok());
        assert!(corollary_case("line-point-three-concurrent-lines").is_ok());
        assert!(matches!(
            corollary_case("nope"),
            Err(Error::UnknownCaseLabel(_))
        ));
    }

    #[test]
    fn labels_are_unique() {
        let cases = corollary_cases();
        let mut labels: Vec<&str> = cases.iter().map(|c| c.label).collect();
        labels.sort_unstable();
        labels.dedup();
        assert_eq!(labels.len(), cases.len());
    }
}
