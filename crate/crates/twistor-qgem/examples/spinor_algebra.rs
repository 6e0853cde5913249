//! Spinor brackets, Hermitian point matrices, and squared intervals.
//!
//! Shows the base layer everything else is built on: the antisymmetric
//! two-spinor bracket, the map from a real spacetime point to its 2x2
//! Hermitian matrix, and the fact that the matrix determinant reproduces
//! the quadratic form `t^2 - x^2 - y^2 - z^2`, which is minus the squared
//! interval in the (-,+,+,+) signature.
//!
//! ```sh
//! cargo run --example spinor_algebra
//! ```

use twistor_qgem::mat::C64;
use twistor_qgem::spinor::{
    eps_bracket, minkowski_interval_sq, Primed, SpacetimePoint, Spinor2,
};

fn main() {
    // The bracket <a b> = a0 b1 - a1 b0 is antisymmetric and vanishes on
    // proportional spinors.
    let a: Spinor2<Primed> = Spinor2::new(C64::new(1.0, 0.5), C64::new(-0.25, 2.0));
    let b: Spinor2<Primed> = Spinor2::new(C64::new(0.75, -1.0), C64::new(1.5, 0.25));
    let ab = eps_bracket(&a, &b);
    let ba = eps_bracket(&b, &a);
    let aa = eps_bracket(&a, &a);
    println!("<a b> = {ab}");
    println!("<b a> = {ba}   (antisymmetry: <a b> + <b a> = {})", ab + ba);
    println!("<a a> = {aa}");
    println!();

    // A real point becomes a Hermitian matrix; its determinant is the
    // quadratic form of the coordinates.
    let p = SpacetimePoint::natural(2.0, 0.3, -1.1, 0.7);
    let q = SpacetimePoint::natural(-0.5, 1.2, 0.4, -0.9);
    let m = p.point_matrix(1.0);
    let det = m.det();
    let quadratic = p.t * p.t - p.x * p.x - p.y * p.y - p.z * p.z;
    println!("point p = ({}, {}, {}, {})", p.t, p.x, p.y, p.z);
    println!("det X(p)        = {det}");
    println!("t^2-x^2-y^2-z^2 = {quadratic}");
    println!();

    // Squared interval between two points, mostly-plus signature. The
    // same number also falls out of det(X(p) - X(q)) with a sign flip.
    let s2 = minkowski_interval_sq(&p, &q, 1.0).expect("same unit mode");
    println!("interval^2(p, q) = {s2}");
    let diff = SpacetimePoint::natural(p.t - q.t, p.x - q.x, p.y - q.y, p.z - q.z);
    let det_diff = diff.point_matrix(1.0).det();
    println!("-det X(p - q)    = {}", -det_diff.re);
}
