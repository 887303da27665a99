// Smoothness rates of random polynomials against the predicted constants.

use ellbasis::cli::stats::{field_of_size, splitting_rate, PREDICTED};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = field_of_size(121, 0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for (n, want, _) in PREDICTED {
        let got = splitting_rate(&f, n, 3, 5000, &mut rng);
        println!("degree {n} into degrees <= 3: {got:.4} (predicted {want})");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("splitting_rates");
}
