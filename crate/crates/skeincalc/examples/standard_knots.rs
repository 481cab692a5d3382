//! Prints the exact invariants of the standard small knots and links.
//!
//! Run with `cargo run -p skeincalc --example standard_knots`.

use skeincalc::bracket::{ambient_normalized, homfly_poly, kauffman_bracket};
use skeincalc::coupling::Coupling;
use skeincalc::diagram::braid;
use skeincalc::expectation::{gauge_expectation, GaugeSpec, Group};

fn main() {
    let coupling = Coupling::from_beta_re(0.1);
    let su2 = GaugeSpec::new(Group::Su2, coupling).expect("valid spec");
    for (name, d) in [
        ("unknot", braid::unknot()),
        ("hopf link", braid::hopf_link()),
        ("right trefoil", braid::trefoil()),
        ("left trefoil", braid::trefoil_left()),
        ("figure-eight", braid::figure_eight()),
    ] {
        println!("{name}:");
        println!("  components    {}", d.component_count());
        println!("  writhe        {}", d.writhe());
        println!("  bracket       {}", kauffman_bracket(&d).expect("small diagram"));
        println!("  normalized    {}", ambient_normalized(&d).expect("small diagram"));
        println!("  homfly        {}", homfly_poly(&d).expect("small diagram"));
        let v = gauge_expectation(&d, &su2).expect("small diagram");
        println!("  su2 @ b=0.1   {:.6} + {:.6}i", v.re, v.im);
    }
}
