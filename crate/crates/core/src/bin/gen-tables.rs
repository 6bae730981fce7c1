//! Regenerates the bundled D/E representation tables.
//!
//! The alpha-rows of the generator matrices are solved from the
//! t-degree-1 layer of the braid relations, interpolated exactly, and the
//! result is pushed through the full validation gate before anything is
//! written. Output lands in crates/core/data/tables/.

use std::path::PathBuf;
use std::time::Instant;

use artin_depth::coxeter::{RootSystem, TypeId};
use artin_depth::lkb::{derive_generators, rep_from_derived, table_from_rep};

fn main() {
    let out_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/tables");
    let dump = std::env::args().any(|a| a == "--dump-rows");

    let targets = [
        (TypeId::D(4), "d4.json"),
        (TypeId::D(5), "d5.json"),
        (TypeId::D(6), "d6.json"),
        (TypeId::E(6), "e6.json"),
        (TypeId::E(7), "e7.json"),
        (TypeId::E(8), "e8.json"),
    ];
    for (t, name) in targets {
        let t0 = Instant::now();
        let gens = match derive_generators(t) {
            Ok(g) => g,
            Err(e) => {
                println!("{}: derivation failed: {} [{:.2?}]", t, e, t0.elapsed());
                continue;
            }
        };
        if dump {
            let rs = RootSystem::new(t).unwrap();
            for (i, g) in gens.iter().enumerate() {
                println!("{} sigma_{} alpha-row:", t, i + 1);
                for c in 0..rs.num_positive() {
                    if let Some(p) = g.get(i, c) {
                        println!(
                            "  col {:?} (ht {}): {}",
                            rs.coords_int(c),
                            rs.height_int(c),
                            p
                        );
                    }
                }
            }
        }
        match rep_from_derived(t, gens) {
            Ok(rep) => {
                let mut table = table_from_rep(&rep);
                table.convention = Some(
                    "alpha-rows solved from the t-degree-1 layer of the braid relations; \
                     scaffold: ascent 1/(1-q), descent q, diagonal-fixed orthogonal"
                        .to_string(),
                );
                let path = out_dir.join(name);
                std::fs::write(&path, table.canonical_string()).expect("write table");
                println!(
                    "{}: dim {} validated ({:?}), wrote {} [{:.2?}]",
                    t,
                    rep.dimension(),
                    rep.validation(),
                    path.display(),
                    t0.elapsed()
                );
            }
            Err(e) => {
                println!("{}: FAILED the gate: {} [{:.2?}]", t, e, t0.elapsed());
            }
        }
    }
}
