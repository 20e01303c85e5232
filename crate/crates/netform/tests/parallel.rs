use netform::parallel;
use netform_core::cost::CostModel;
use netform_core::motifs::{null_model_stats, MotifKind};
use netform_core::stability::{price_metrics, scan_all};
use netform_core::{GameParams, Network, NodeId, PlayerType, Rational};

fn params() -> GameParams {
    GameParams::new(
        Rational::from_integer(4),
        Rational::new(3, 2),
        Rational::from_integer(2),
        Rational::from_integer(1),
    )
    .unwrap()
}

#[test]
fn parallel_scan_matches_sequential() {
    let p = params();
    for model in [CostModel::Full, CostModel::Bare] {
        assert_eq!(
            parallel::scan(&p, 2, 3, model, 7).unwrap(),
            scan_all(&p, 2, 3, model, 7).unwrap()
        );
    }
    assert_eq!(
        parallel::price_metrics(&p, 2, 3, 7).unwrap(),
        price_metrics(&p, 2, 3).unwrap()
    );
}

#[test]
fn parallel_null_matches_sequential() {
    let mut g = Network::from_kinds(vec![PlayerType::Minor; 12]);
    for (u, v) in [
        (0, 1),
        (1, 2),
        (2, 0),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 3),
        (5, 6),
        (6, 7),
        (7, 8),
        (8, 6),
        (9, 10),
        (10, 11),
        (11, 9),
        (0, 9),
    ] {
        g.add_edge(NodeId(u), NodeId(v)).unwrap();
    }
    for kind in [MotifKind::EntangledCycle(3), MotifKind::DoubleStar(1)] {
        assert_eq!(
            parallel::null_model_stats(&g, kind, 70, 5).unwrap(),
            null_model_stats(&g, kind, 70, 5).unwrap()
        );
    }
}
