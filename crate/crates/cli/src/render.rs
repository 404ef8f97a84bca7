use troplift::schema::{Artifact, Body};
use troplift::svg::Scene;
use troplift::Rat;

/// What gets drawn for each artifact kind.
pub fn scene_for(a: &Artifact, ray_len: &Rat) -> Scene {
    let mut s = Scene::new(ray_len.clone());
    match &a.body {
        Body::TropCurve { curve, .. } => {
            s.add_curve(curve);
        }
        Body::Divisor { divisor } => {
            s.add_divisor(divisor);
        }
        Body::IntersectionComplex { complex } => {
            s.add_complex(complex);
        }
        Body::PlFunc { graph, function } => {
            s.add_graph(graph);
            if let Some(h) = function {
                s.add_function(graph, h);
                s.add_divisor(&troplift::divisor_of(h, graph));
            }
        }
        Body::LiftReport { report } => {
            s.add_complex(&report.complex).add_graph(&report.graph);
            s.add_divisor(&report.image.plus(&report.ray_end_completion).sub(&report.stable));
            if let Some(h) = &report.certificate {
                s.add_function(&report.graph, h);
            }
        }
        Body::ConfigCells { space } => {
            s.add_graph(&space.graph).add_divisor(&space.stable);
        }
    }
    s
}
