mod common;

use troplift::fixtures::*;
use troplift::schema::{Artifact, Body};
use troplift::*;

use common::*;

fn round_trip(body: Body) {
    let a = Artifact::new(body);
    let back = Artifact::from_json(&a.to_json()).unwrap();
    assert_eq!(back, a, "{}", a.kind());
}

#[test]
fn every_artifact_reloads_equal() {
    let (f, g) = conic_pair();
    let (cf, cg) = curves(&f, &g);
    round_trip(Body::TropCurve { polynomial: print_poly(&f), curve: cf.clone() });
    round_trip(Body::IntersectionComplex { complex: intersect_complex(&cf, &cg) });
    round_trip(Body::Divisor { divisor: stable_divisor(&cf, &cg).unwrap() });
    let rep = verify_main_theorem(&f, &g).unwrap();
    round_trip(Body::PlFunc { graph: rep.graph.clone(), function: rep.certificate.clone() });
    round_trip(Body::LiftReport { report: Box::new(rep) });
    let (gr, e) = graph_and_stable(&f, &g);
    round_trip(Body::ConfigCells { space: configuration_space(&gr, &e).unwrap() });

    let (f, g) = lines_off_torus();
    let rep = verify_main_theorem(&f, &g).unwrap();
    round_trip(Body::LiftReport { report: Box::new(rep) });
}

#[test]
fn star_graph_has_three_unit_legs() {
    let (f, g) = conic_pair();
    let (gr, _) = graph_and_stable(&f, &g);
    let legs: Vec<_> = gr.arcs.iter().filter(|a| a.in_s).collect();
    assert_eq!(legs.len(), 3);
    assert!(legs.iter().all(|a| a.length() == Some(&q(1, 1))));
    let centre = gr.nodes.iter().position(|n| n.pos == Point2::origin()).unwrap();
    assert!(!gr.attachment_nodes().contains(&centre));
    assert_eq!(gr.attachment_nodes().len(), 3);
}

#[test]
fn double_line_marks_three_rays() {
    let (f, g) = double_line(0, &q(1, 2));
    let (gr, e) = graph_and_stable(&f, &g);
    assert_eq!(gr.arcs.len(), 3);
    assert!(gr.arcs.iter().all(|a| a.in_s && a.is_ray()));
    assert_eq!(e, points(&[(q(0, 1), q(0, 1), 1)]));
}

#[test]
fn bernstein_accounting_on_fixtures() {
    let pairs = [line_conic(&q(1, 3)), conic_pair(), double_line(1, &q(1, 2)), lines_off_torus(), cubic_pair(&q(2, 3), &q(1, 3), CUBIC_CONSTANT)];
    for (f, g) in pairs {
        let rep = verify_main_theorem(&f, &g).unwrap();
        assert!(rep.image.degree() <= rep.mixed_volume);
        assert_eq!(rep.image.degree() + rep.ray_end_completion.degree(), rep.mixed_volume);
        assert!(rep.image.support().iter().all(|p| rep.complex.contains(p.as_point().unwrap())));
    }
}

#[test]
fn parse_errors_report_position() {
    match parse_poly("x + y +\n  (1 + t^(1/2)") {
        Err(Error::Parse { line, expected, .. }) => {
            assert_eq!(line, 2);
            assert!(!expected.is_empty());
        }
        other => panic!("{other:?}"),
    }
}
