//! `key = value` configuration files. Keys are the long flag names
//! (`at-x` or `at_x`); `#` starts a comment. Values from the file only fill
//! flags that were not given on the command line.

use std::path::PathBuf;

use crate::{CliError, Opts};

pub fn parse(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", k + 1)))?;
        out.push((key.trim().replace('_', "-"), value.trim().to_string()));
    }
    Ok(out)
}

fn bad(key: &str, value: &str) -> CliError {
    CliError::Usage(format!("config: bad value `{value}` for `{key}`"))
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value.parse().map_err(|_| bad(key, value))
}

fn list(value: &str) -> Vec<String> {
    value.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn fill<T>(slot: &mut Option<T>, v: T) {
    if slot.is_none() {
        *slot = Some(v);
    }
}

pub fn merge(opts: &mut Opts, entries: &[(String, String)]) -> Result<(), CliError> {
    for (key, value) in entries {
        let (k, v) = (key.as_str(), value.as_str());
        match k {
            "class" | "classes" => {
                if opts.class.is_empty() {
                    opts.class = list(v);
                }
            }
            "cutoff" => {
                if opts.cutoff.is_empty() {
                    opts.cutoff = list(v);
                }
            }
            "size" | "sizes" => fill(&mut opts.size, v.to_string()),
            "n" => fill(&mut opts.n, num(k, v)?),
            "mu" => fill(&mut opts.mu, num(k, v)?),
            "at-x" => fill(&mut opts.at_x, v.to_string()),
            "at-y" => fill(&mut opts.at_y, v.to_string()),
            "format" => fill(&mut opts.format, v.to_string()),
            "threads" => fill(&mut opts.threads, num(k, v)?),
            "out" => fill(&mut opts.out, PathBuf::from(v)),
            "id" => fill(&mut opts.id, v.to_string()),
            "family" => fill(&mut opts.family, v.to_string()),
            "max-size" => fill(&mut opts.max_size, v.to_string()),
            "bound" => fill(&mut opts.bound, num(k, v)?),
            "style" => fill(&mut opts.style, v.to_string()),
            "all" => {
                opts.all |= match v.to_ascii_lowercase().as_str() {
                    "true" | "yes" | "1" => true,
                    "false" | "no" | "0" => false,
                    _ => return Err(bad(k, v)),
                }
            }
            "config" => return Err(CliError::Usage("config files cannot include other config files".into())),
            _ => return Err(CliError::Usage(format!("config: unknown key `{k}`"))),
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win() {
        let mut o = Opts {
            mu: Some(2),
            ..Opts::default()
        };
        let entries = parse("# defaults\nmu = 1\nat_x = 3/2\nclasses = 1, 5\nall = yes\n").unwrap();
        merge(&mut o, &entries).unwrap();
        assert_eq!(o.mu, Some(2));
        assert_eq!(o.at_x.as_deref(), Some("3/2"));
        assert_eq!(o.class, vec!["1", "5"]);
        assert!(o.all);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("no equals sign").is_err());
        assert!(merge(&mut Opts::default(), &parse("colour = red").unwrap()).is_err());
        assert!(merge(&mut Opts::default(), &parse("mu = lots").unwrap()).is_err());
    }
}
