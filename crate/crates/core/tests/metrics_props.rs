use fkcd::*;
use proptest::prelude::*;

fn pair() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (1usize..60).prop_flat_map(|n| (prop::collection::vec(0usize..6, n), prop::collection::vec(0usize..6, n)))
}

fn same_partition(a: &[usize], b: &[usize]) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| (a[i] == a[j]) == (b[i] == b[j])))
}

proptest! {
    #[test]
    fn nmi_is_symmetric_and_bounded((a, b) in pair()) {
        let (pa, pb) = (LabeledPartition::new(a.clone()), LabeledPartition::new(b.clone()));
        let ab = nmi(&pa, &pb).unwrap();
        prop_assert_eq!(ab, nmi(&pb, &pa).unwrap());
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert_eq!(ab == 1.0, same_partition(&a, &b));
    }

    #[test]
    fn merging_never_lowers_coverage(
        edges in prop::collection::vec((0usize..12, 0usize..12, 0.1f64..3.0), 1..40),
        labels in prop::collection::vec(0usize..5, 12),
        x in 0usize..5,
        y in 0usize..5,
    ) {
        let wg = WeightedGraph64::from_weighted_edges(12, &edges).unwrap();
        let before = coverage(&wg, &Partition::from_assignment(&wg, &labels).unwrap()).unwrap();
        let merged: Vec<usize> = labels.iter().map(|&c| if c == y { x } else { c }).collect();
        let after = coverage(&wg, &Partition::from_assignment(&wg, &merged).unwrap()).unwrap();
        prop_assert!(after >= before - 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&after));
    }
}

#[test]
fn bridged_triangles_coverage() {
    let edges: Vec<_> = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]
        .iter()
        .map(|&(u, v)| (u, v, 1.0))
        .collect();
    let wg = WeightedGraph64::from_weighted_edges(6, &edges).unwrap();
    let p = Partition::from_assignment(&wg, &[0, 0, 0, 1, 1, 1]).unwrap();
    assert!((coverage(&wg, &p).unwrap() - 6.0 / 7.0).abs() < 1e-15);
}

#[test]
fn ground_truth_against_loaded_labels() {
    let loaded = load_edge_list("10 20\n20 30\n30 10\n40 50\n50 60\n60 40\n30 40\n".as_bytes()).unwrap();
    let truth = load_ground_truth("10 a\n20 a\n30 a\n40 b\n50 b\n60 b\n".as_bytes(), &loaded.ids).unwrap();
    let d = louvain_baseline::<f64>(&loaded.graph, DEFAULT_EPSILON, 1).unwrap();
    assert_eq!(nmi(&truth, &LabeledPartition::new(d.flat_assignment())).unwrap(), 1.0);
}
