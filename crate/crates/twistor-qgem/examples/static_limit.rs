//! How fast the relativistic phase converges to the Newtonian one.
//!
//! One mass sits still; the other oscillates transversally with peak speed
//! v. The retarded, proper-time-weighted phase and the instantaneous
//! Newtonian phase then differ by a correction that should vanish like
//! (v/c)^2. The study integrates both phases at a ladder of speeds and
//! fits the order of the leading correction from the log-log slope.
//!
//! Natural units (c = 1) keep the worldline numbers tame; the phase ratio
//! is what matters, not its absolute scale.
//!
//! ```sh
//! cargo run --example static_limit
//! ```

use twistor_qgem::phase::{static_limit_study, PhaseOptions, PhysicalConstants};

fn main() {
    let consts = PhysicalConstants::natural();
    let fractions = [0.2, 0.1, 0.05, 0.025];

    eprintln!("integrating retarded and Newtonian phases at four speeds...");
    let study = static_limit_study(1.0, 24.0, &fractions, &consts, &PhaseOptions::default())
        .expect("valid study parameters");

    println!("v/c      phi_newtonian        phi_relativistic     relative deviation");
    for row in &study.rows {
        println!(
            "{:<8} {:<20.12} {:<20.12} {:.6e}",
            row.velocity_fraction, row.phi_newtonian, row.phi_relativistic, row.relative_deviation
        );
    }
    println!();
    println!(
        "fitted order of the correction in v/c: {:.3} (fit residual {:.2e})",
        study.fitted_order, study.fit_residual
    );
    println!("an order of 2 is the quadratic suppression expected of");
    println!("velocity corrections to the static interaction.");
}
