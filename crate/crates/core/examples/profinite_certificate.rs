//! Clopen-filter certificates for each linear topology of B4.

use rlw::algebra::boolean;
use rlw::limits::{profiniteness_certificate, Certificate};
use rlw::topology::enumerate_zltrl;

fn main() -> rlw::Result<()> {
    let b4 = boolean(2);
    for t in enumerate_zltrl(&b4)? {
        let v = profiniteness_certificate(&b4, &t)?;
        let what = match &v.certificate {
            Certificate::Profinite { clopen_filters } => {
                let fs: Vec<String> = clopen_filters.iter().map(ToString::to_string).collect();
                format!("certified by {}", fs.join(" "))
            }
            Certificate::Refuted { unseparated } => format!("refuted, {unseparated:?} not separated"),
        };
        println!("{:?}: {what}", t.min_nbhds());
    }
    Ok(())
}
