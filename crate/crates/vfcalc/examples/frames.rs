//! End-to-end pipeline demo: realize the built-in operator families,
//! build their bracket tables, and print the minimal spanning frames.

use polyalg::parse_poly;
use vfcalc::{build_words, hormander_check, spec_to_fields, HormanderVerdict, OperatorKind, OperatorSpec};

fn main() {
    let curve = vec![
        parse_poly("t", &["t"]).unwrap(),
        parse_poly("t^2", &["t"]).unwrap(),
    ];
    let specs = [
        ("averaging along the parabola", OperatorSpec::new(OperatorKind::Convolution { curve })),
        ("x-ray family in dimension 4", OperatorSpec::new(OperatorKind::XRay { ambient: 4 })),
    ];
    for (label, spec) in specs {
        let data = spec_to_fields(&spec).expect("built-in spec is valid");
        let names = data.chart.names();
        println!("{label}");
        println!("  X1 = {}", data.x1.render(&names));
        println!("  X2 = {}", data.x2.render(&names));
        let table = build_words(&data.x1, &data.x2, 8).expect("base fields are well formed");
        match hormander_check(&table, &data.base_point).expect("origin is a regular point") {
            HormanderVerdict::Spans { witnesses } => {
                for gen in witnesses {
                    let tuple: Vec<String> =
                        gen.words.iter().map(|w| w.to_string()).collect();
                    println!("  degree {} via ({})", gen.degree, tuple.join(", "));
                }
            }
            HormanderVerdict::FailsUpToCap { cap, spanned, dim } => {
                println!("  no spanning frame up to length {cap}: rank {spanned} of {dim}");
            }
        }
    }
}
