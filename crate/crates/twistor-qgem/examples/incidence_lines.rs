//! Incident twistors and recovering a point from its line.
//!
//! A spacetime point is not one twistor but a line of them: every choice of
//! primed spinor pi gives an incident twistor (omega, pi) with
//! `omega = i X pi`. Two such twistors span the line; packaging them as a
//! bitwistor and solving the incidence relations recovers the original
//! point exactly.
//!
//! ```sh
//! cargo run --example incidence_lines
//! ```

use twistor_qgem::bitwistor::{line_to_point, point_to_bitwistor, simplicity_check, PiBasis};
use twistor_qgem::mat::C64;
use twistor_qgem::spinor::{Primed, SpacetimePoint, Spinor2};
use twistor_qgem::twistor::{incidence_residual, incident_twistor};

fn main() {
    let point = SpacetimePoint::natural(1.25, -0.5, 2.0, 0.75);
    println!(
        "point: t = {}, x = {}, y = {}, z = {}",
        point.t, point.x, point.y, point.z
    );
    println!();

    // Any nonzero primed spinor yields an incident twistor.
    let pis: [Spinor2<Primed>; 3] = [
        Spinor2::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
        Spinor2::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0)),
        Spinor2::new(C64::new(0.6, -0.8), C64::new(0.3, 1.1)),
    ];
    for (k, pi) in pis.iter().enumerate() {
        let z = incident_twistor(&point, pi, 1.0).expect("nonzero spinor");
        let residual = incidence_residual(&z, &point, 1.0);
        println!(
            "incident twistor {k}: components {:?}, incidence residual {residual:.3e}",
            z.components()
        );
    }
    println!();

    // Two independent incident twistors span the line of the point. The
    // line is simple (it satisfies the Plücker quadric) and maps back to
    // the point it came from.
    let basis = PiBasis::default();
    let line = point_to_bitwistor(&point, &basis, 1.0).expect("finite point");
    println!("simplicity residual of the line: {:.3e}", simplicity_check(&line));

    let recovered = line_to_point(&line).expect("line of a real point");
    println!(
        "recovered point: t = {}, x = {}, y = {}, z = {}",
        recovered.t, recovered.x, recovered.y, recovered.z
    );
    let dev = (recovered.t - point.t)
        .abs()
        .max((recovered.x - point.x).abs())
        .max((recovered.y - point.y).abs())
        .max((recovered.z - point.z).abs());
    println!("max coordinate deviation after the round trip: {dev:.3e}");
}
