use std::time::Instant;
use twistfilt_core::filtration::TitsProfile;
use twistfilt_core::gammaring::Assignment;
use twistfilt_core::witness::{verify_theorem, Convention};

#[test]
#[ignore]
fn probe_theorem_sweep() {
    let t0 = Instant::now();
    let mut count = 0;
    for n in [4usize, 8, 16, 32] {
        let v2n = (n as u64).trailing_zeros();
        for c in 2..=v2n {
            for b in 1..=c {
                for a in 1..=b {
                    if a + b <= c { continue; }
                    let p = TitsProfile::new(a, b, c, Assignment::default()).unwrap();
                    let t1 = Instant::now();
                    let rep = verify_theorem(n, &p, Convention::Paper).unwrap();
                    count += 1;
                    println!("n={n} ({a},{b},{c}): all={} in {:?}", rep.all_passed(), t1.elapsed());
                    assert!(rep.all_passed(), "n={n} ({a},{b},{c})");
                }
            }
        }
    }
    println!("total {count} profiles in {:?}", t0.elapsed());
}
