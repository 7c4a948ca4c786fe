use std::collections::HashSet;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use bdanchor::{
    build_full, build_sparse, default_r, fast_anchors_par, naive_find_all, AnchorKind, AnchorScheme, AnchorSet,
    BdIndex, Error, KrContext, Text,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{BuildArgs, Builder, Kind, SchemeArgs, TextArgs, Variant};
use crate::CliError;

/// Checkpoint spacing of the fingerprint table used by the sparse builder.
const KR_STRIDE: usize = 64;

/// Library errors that come from bad flag values rather than bad data.
fn classify(e: Error) -> CliError {
    match e {
        Error::InvalidScheme { .. } | Error::BlockTooShort | Error::InvalidMinimizerParams { .. } => {
            CliError::Usage(e.to_string())
        }
        other => other.into(),
    }
}

fn read_text(args: &TextArgs) -> Result<Text, CliError> {
    let mut bytes =
        std::fs::read(&args.text).map_err(|e| CliError::Data(format!("cannot read {}: {e}", args.text.display())))?;
    if args.strip_trailing_newline && bytes.last() == Some(&b'\n') {
        bytes.pop();
    }
    Ok(Text::new(bytes)?)
}

fn read_index(path: &Path) -> Result<BdIndex, CliError> {
    let file = File::open(path).map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    Ok(BdIndex::read_from(BufReader::new(file))?)
}

/// One pattern per line; a final newline does not start an extra pattern.
fn read_patterns(path: &Path) -> Result<Vec<Vec<u8>>, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    if bytes.is_empty() {
        return Ok(Vec::new());
    }
    let body = bytes.strip_suffix(b"\n").unwrap_or(&bytes);
    Ok(body.split(|&c| c == b'\n').map(<[u8]>::to_vec).collect())
}

fn check_build_flags(scheme: &SchemeArgs, build: &BuildArgs) -> Result<(), CliError> {
    if scheme.ell == 0 {
        return Err(CliError::Usage("--ell must be at least 1".into()));
    }
    if let Some(r) = scheme.r {
        if r >= scheme.ell {
            return Err(CliError::Usage(format!("--r must be below --ell (got r={r}, ell={})", scheme.ell)));
        }
    }
    if build.block < 2 * scheme.ell {
        return Err(CliError::Usage(format!("--block must be at least 2·ell = {}", 2 * scheme.ell)));
    }
    if build.threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    Ok(())
}

fn make_scheme(args: &SchemeArgs, text: &Text) -> Result<AnchorScheme, CliError> {
    let r = match args.r {
        Some(r) => r,
        None => default_r(args.ell, text.sigma().max(2)).map_err(classify)?,
    };
    let kind = match args.kind {
        Kind::Lex => AnchorKind::Lex,
        Kind::Ran => AnchorKind::Randomized,
    };
    AnchorScheme::new(args.ell, r, kind, args.seed).map_err(classify)
}

fn sample(text: &Text, scheme: &AnchorScheme, build: &BuildArgs) -> Result<AnchorSet, CliError> {
    fast_anchors_par(text, scheme, build.block, build.threads).map_err(classify)
}

fn construct(text: &Text, anchors: &AnchorSet, build: &BuildArgs) -> Result<BdIndex, CliError> {
    let grid = build.variant == Variant::Grid;
    Ok(match build.builder {
        Builder::Full => build_full(text, anchors, grid)?,
        Builder::Sparse => {
            let kr = KrContext::with_stride(text.as_bytes(), anchors.scheme().seed(), KR_STRIDE);
            build_sparse(text, anchors, &kr, grid)?
        }
    })
}

/// Peak resident set size in KiB, where the platform reports it.
fn peak_rss_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| CliError::Data(format!("cannot write {}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

pub fn build(input: &TextArgs, scheme: &SchemeArgs, build: &BuildArgs, out: &Path) -> Result<(), CliError> {
    check_build_flags(scheme, build)?;
    let text = read_text(input)?;
    let scheme = make_scheme(scheme, &text)?;
    let start = Instant::now();
    let anchors = sample(&text, &scheme, build)?;
    let index = construct(&text, &anchors, build)?;
    let build_ns = start.elapsed().as_nanos();
    let file = File::create(out).map_err(|e| CliError::Data(format!("cannot write {}: {e}", out.display())))?;
    let mut w = BufWriter::new(file);
    index.write_to(&mut w)?;
    w.flush()?;
    let rss = peak_rss_kib().map_or_else(|| "NA".to_string(), |k| k.to_string());
    println!(
        "n={}\tsigma={}\tell={}\tr={}\tkind={}\tanchors={}\tdensity={:.3}\tbuilder={}\tvariant={}\tbuild_ns={}\tpeak_rss_kib={}",
        text.len(),
        text.sigma(),
        scheme.ell(),
        scheme.r(),
        scheme.kind().as_str(),
        anchors.len(),
        anchors.density_inverse(),
        build.builder.as_str(),
        build.variant.as_str(),
        build_ns,
        rss
    );
    Ok(())
}

fn check_pair(index: &BdIndex, text: &Text, variant: Variant) -> Result<(), CliError> {
    if index.n() != text.len() {
        return Err(Error::TextMismatch { index_n: index.n(), text_n: text.len() }.into());
    }
    if variant == Variant::Grid && !index.has_grid() {
        return Err(Error::NoGrid.into());
    }
    Ok(())
}

fn answer(index: &BdIndex, text: &Text, p: &[u8], variant: Variant, oracle: bool) -> Result<Vec<usize>, Error> {
    if p.len() < index.scheme().ell() {
        return Err(Error::PatternTooShort);
    }
    match (oracle, variant) {
        (true, _) => naive_find_all(text.as_bytes(), p),
        (false, Variant::Bidir) => index.query_bidirectional(text, p),
        (false, Variant::Grid) => index.query_grid(text, p),
    }
}

pub fn query(
    input: &TextArgs,
    index: &Path,
    patterns: &Path,
    variant: Variant,
    output: Option<&Path>,
    oracle: bool,
) -> Result<(), CliError> {
    let index = read_index(index)?;
    let text = read_text(input)?;
    check_pair(&index, &text, variant)?;
    let patterns = read_patterns(patterns)?;
    let mut out = open_output(output)?;
    for (line, p) in patterns.iter().enumerate() {
        match answer(&index, &text, p, variant, oracle) {
            Ok(hits) => {
                let list: Vec<String> = hits.iter().map(usize::to_string).collect();
                writeln!(out, "{}\t{}\t{}", line + 1, hits.len(), list.join(" "))?;
            }
            Err(Error::PatternTooShort) => writeln!(out, "{}\tERR pattern-too-short", line + 1)?,
            Err(e) => return Err(e.into()),
        }
    }
    out.flush()?;
    Ok(())
}

pub fn stats(path: &Path) -> Result<(), CliError> {
    let index = read_index(path)?;
    let bytes = std::fs::metadata(path)?.len();
    let s = index.scheme();
    println!(
        "n={}\tell={}\tr={}\tkind={}\tseed={}\tanchors={}\tgrid={}\twords={}\tfile_bytes={}",
        index.n(),
        s.ell(),
        s.r(),
        s.kind().as_str(),
        s.seed(),
        index.len(),
        index.has_grid(),
        index.words(),
        bytes
    );
    Ok(())
}

pub fn patgen(
    input: &TextArgs,
    length: usize,
    count: usize,
    seed: u64,
    distinct: bool,
    output: Option<&Path>,
) -> Result<(), CliError> {
    if length == 0 || count == 0 {
        return Err(CliError::Usage("--length and --count must be at least 1".into()));
    }
    let text = read_text(input)?;
    let s = text.as_bytes();
    if length > s.len() {
        return Err(CliError::Data(format!("pattern length {length} exceeds text length {}", s.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: HashSet<&[u8]> = HashSet::new();
    let mut picked: Vec<&[u8]> = Vec::with_capacity(count);
    let budget = count.saturating_mul(50);
    let mut draws = 0;
    while picked.len() < count {
        if draws == budget {
            return Err(CliError::Data(if distinct {
                "cannot generate enough distinct patterns".into()
            } else {
                "cannot generate enough patterns free of newlines".into()
            }));
        }
        draws += 1;
        let u = rng.gen_range(0..=s.len() - length);
        let p = &s[u..u + length];
        // A newline would split the pattern when the file is read back.
        if p.contains(&b'\n') || (distinct && !seen.insert(p)) {
            continue;
        }
        picked.push(p);
    }
    let mut out = open_output(output)?;
    for p in picked {
        out.write_all(p)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn bench(input: &TextArgs, scheme: &SchemeArgs, build: &BuildArgs, patterns: &Path) -> Result<(), CliError> {
    check_build_flags(scheme, build)?;
    let text = read_text(input)?;
    let scheme = make_scheme(scheme, &text)?;
    let patterns = read_patterns(patterns)?;

    let t0 = Instant::now();
    let anchors = sample(&text, &scheme, build)?;
    let anchor_ns = t0.elapsed().as_nanos();
    let t1 = Instant::now();
    let index = construct(&text, &anchors, build)?;
    let build_ns = t1.elapsed().as_nanos();
    let index_bytes = index.to_bytes().len();

    let (mut queried, mut short, mut occurrences) = (0u64, 0u64, 0u64);
    let t2 = Instant::now();
    for p in &patterns {
        match answer(&index, &text, p, build.variant, false) {
            Ok(hits) => {
                queried += 1;
                occurrences += hits.len() as u64;
            }
            Err(Error::PatternTooShort) => short += 1,
            Err(e) => return Err(e.into()),
        }
    }
    let query_ns = t2.elapsed().as_nanos();
    let mean = if queried == 0 { 0.0 } else { query_ns as f64 / queried as f64 };

    println!("n,sigma,ell,r,kind,builder,variant,anchors,anchor_ns,build_ns,query_total_ns,query_mean_ns,patterns,short_patterns,occurrences,index_bytes");
    println!(
        "{},{},{},{},{},{},{},{},{},{},{},{:.1},{},{},{},{}",
        text.len(),
        text.sigma(),
        scheme.ell(),
        scheme.r(),
        scheme.kind().as_str(),
        build.builder.as_str(),
        build.variant.as_str(),
        anchors.len(),
        anchor_ns,
        build_ns,
        query_ns,
        mean,
        queried,
        short,
        occurrences,
        index_bytes
    );
    Ok(())
}
