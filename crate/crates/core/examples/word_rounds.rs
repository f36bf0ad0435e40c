//! Round equivalence of words and their per-round Parikh vectors.

use roundsim::words::{parikh, round_equivalent, rounds};
use roundsim::{Alphabet, RoundSpec};

fn main() -> roundsim::Result<()> {
    let ab = Alphabet::new(["a", "b"])?;
    let x = ab.chars("abaabbabbbaa")?;
    let y = ab.chars("baabbaabbaba")?;

    for k in [1, 2, 3, 4, 6, 12] {
        let k = RoundSpec::new(k)?;
        println!("k={:<2} equivalent={}", k.get(), round_equivalent(&x, &y, k));
    }

    let k = RoundSpec::new(3)?;
    for (i, (r, s)) in rounds(&x, k)?.into_iter().zip(rounds(&y, k)?).enumerate() {
        println!(
            "round {i}: {} {} -> {}",
            ab.render(r),
            ab.render(s),
            parikh(r, &ab)?.render(&ab)
        );
    }
    Ok(())
}
