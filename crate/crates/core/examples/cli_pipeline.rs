// Every CLI stage in a scratch directory.

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("ellbasis-example-{}", std::process::id()));
    let d = dir.to_str().ok_or("non-utf8 temp dir")?.to_string();
    let steps: [&[&str]; 8] = [
        &["search"],
        &["basis"],
        &["harvest"],
        &["extend"],
        &["solve"],
        &["dlog", "--planted", "4242"],
        &["verify", "--sample", "10"],
        &["stats", "--q", "25", "--samples", "2000"],
    ];
    for s in steps {
        let mut args = vec!["ellbasis", "--dir", &d, "--small-prime-threshold", "0"];
        args.extend_from_slice(s);
        println!("$ ellbasis {}", s.join(" "));
        print!("{}", ellbasis::cli::run(args)?);
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("cli_pipeline");
}
