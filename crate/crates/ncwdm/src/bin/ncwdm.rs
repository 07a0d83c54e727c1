//! Thin command-line front end over the `ncwdm` pipeline.
//!
//! Exit codes: 0 on success, 2 on configuration or validation failure.

use std::path::PathBuf;
use std::process::ExitCode;

use ncwdm::cli::{
    cmd_bounds, cmd_daily, cmd_milp_check, cmd_milp_export, cmd_sweep_r, cmd_validate,
    parse_layer, parse_mode, parse_params, parse_range_list, parse_scheme, RunConfig,
    TopologySpec,
};
use ncwdm::milp::ModelMode;
use ncwdm::Result;

const USAGE: &str = "\
ncwdm <command> [flags]

commands:
  daily        per-hour network power and coding savings over a day
  sweep-r      power versus port ratio r, with crossover detection
  bounds       analytic bounds against the evaluated model
  milp-export  write the optimization model as an LP file
  milp-check   verify a solver solution file against the model
  validate     run the full invariant suite

common flags:
  --topology <nsfnet|usnet|nsfnet-ring|nsfnet-line|nsfnet-star|nsfnet-mesh|
              ring:N|line:N|star:N[:CENTER]|mesh:N|file.json>   (default nsfnet)
  --hours  <list, e.g. 0..22:2 or 0,6,12>                       (default 0..22:2)
  --seeds  <list, e.g. 1..5>                                    (default 1..5)
  --params <table4|table5_greentouch|file.json>                 (default table4)
  --scheme <conventional,nc>                                    (default both)
  --layer  <non_bypass,bypass>                                  (default non_bypass)
  --mode   <zero_pad,partition>                                 (default zero_pad)
  --demand-scale <factor applied to every generated demand>     (default 1)
  --out    <directory for CSV artifacts>                        (default out)

sweep-r flags:    --r-min <f> --r-max <f> --steps <n>
milp-export flag: --model-mode <conventional|nc_zero_pad|nc_partition> --lp <file>
milp-check flags: --model-mode <...> --solution <file>
";

struct Flags {
    named: Vec<(String, String)>,
}

impl Flags {
    fn parse(args: &[String]) -> std::result::Result<Flags, String> {
        let mut named = Vec::new();
        let mut it = args.iter();
        while let Some(arg) = it.next() {
            let Some(name) = arg.strip_prefix("--") else {
                return Err(format!("unexpected argument '{arg}'"));
            };
            let Some(value) = it.next() else {
                return Err(format!("flag --{name} needs a value"));
            };
            named.push((name.to_string(), value.clone()));
        }
        Ok(Flags { named })
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.named
            .iter()
            .rev()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }
}

fn build_config(flags: &Flags) -> Result<RunConfig> {
    let topology = TopologySpec::parse(flags.get("topology").unwrap_or("nsfnet"))?;
    let out_dir = PathBuf::from(flags.get("out").unwrap_or("out"));
    let mut cfg = RunConfig::new(topology, out_dir);
    if let Some(hours) = flags.get("hours") {
        cfg.hours = parse_range_list(hours)?.into_iter().map(|h| h as u8).collect();
    }
    if let Some(seeds) = flags.get("seeds") {
        cfg.seeds = parse_range_list(seeds)?;
    }
    if let Some(params) = flags.get("params") {
        cfg.params = parse_params(params)?;
    }
    if let Some(schemes) = flags.get("scheme") {
        cfg.schemes = schemes.split(',').map(parse_scheme).collect::<Result<_>>()?;
    }
    if let Some(layers) = flags.get("layer") {
        cfg.layers = layers.split(',').map(parse_layer).collect::<Result<_>>()?;
    }
    if let Some(modes) = flags.get("mode") {
        cfg.modes = modes.split(',').map(parse_mode).collect::<Result<_>>()?;
    }
    if let Some(scale) = flags.get("demand-scale") {
        cfg.demand_scale = scale
            .parse()
            .map_err(|_| ncwdm::Error::Parameter(format!("--demand-scale: bad number '{scale}'")))?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn num_flag(flags: &Flags, name: &str, default: f64) -> Result<f64> {
    match flags.get(name) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|_| ncwdm::Error::Parameter(format!("--{name}: bad number '{v}'"))),
    }
}

fn run(command: &str, flags: &Flags) -> Result<bool> {
    match command {
        "daily" => {
            let cfg = build_config(flags)?;
            let summary = cmd_daily(&cfg)?;
            for path in &summary.files {
                println!("wrote {}", path.display());
            }
            for (&(layer, mode), &s) in &summary.mean_savings {
                println!(
                    "daily mean savings ({} / {}): {:.2}%",
                    layer.name(),
                    mode.name(),
                    100.0 * s
                );
            }
            Ok(true)
        }
        "sweep-r" => {
            let cfg = build_config(flags)?;
            let r_min = num_flag(flags, "r-min", 1.0)?;
            let r_max = num_flag(flags, "r-max", 2.2)?;
            let steps = num_flag(flags, "steps", 61.0)? as usize;
            let summary = cmd_sweep_r(&cfg, r_min, r_max, steps)?;
            for path in &summary.files {
                println!("wrote {}", path.display());
            }
            for (mode, crossing) in &summary.crossover {
                match crossing {
                    Some(r) => println!("{} crosses conventional at r = {r:.3}", mode.name()),
                    None => println!("{} does not cross in [{r_min}, {r_max}]", mode.name()),
                }
            }
            Ok(true)
        }
        "bounds" => {
            let cfg = build_config(flags)?;
            let summary = cmd_bounds(&cfg)?;
            for path in &summary.files {
                println!("wrote {}", path.display());
            }
            println!(
                "{} rows, {} sandwich violations",
                summary.rows, summary.sandwich_violations
            );
            Ok(summary.sandwich_violations == 0)
        }
        "milp-export" => {
            let cfg = build_config(flags)?;
            let mode = ModelMode::parse(flags.get("model-mode").unwrap_or("nc_zero_pad"))?;
            let out = PathBuf::from(flags.get("lp").unwrap_or("model.lp"));
            cmd_milp_export(&cfg, mode, &out)?;
            println!("wrote {}", out.display());
            Ok(true)
        }
        "milp-check" => {
            let cfg = build_config(flags)?;
            let mode = ModelMode::parse(flags.get("model-mode").unwrap_or("nc_zero_pad"))?;
            let solution = PathBuf::from(
                flags
                    .get("solution")
                    .ok_or_else(|| ncwdm::Error::Parameter("--solution required".into()))?,
            );
            let report = cmd_milp_check(&cfg, mode, &solution)?;
            println!("solution feasible; objective {:.3} W", report.recomputed_objective);
            if let Some(rep) = report.reported_objective {
                println!("reported objective {rep:.3} W");
            }
            println!("minimum-hop heuristic {:.3} W", report.heuristic_w);
            match (report.brute_force_w, report.oracle_gap) {
                (Some(oracle), Some(gap)) => {
                    println!("exhaustive optimum {oracle:.3} W, relative gap {gap:.2e}");
                    Ok(gap <= 1e-4)
                }
                _ => {
                    println!("instance too large for the exhaustive oracle");
                    Ok(true)
                }
            }
        }
        "validate" => {
            let report = cmd_validate();
            print!("{}", report.render());
            Ok(report.all_pass())
        }
        other => Err(ncwdm::Error::Parameter(format!("unknown command '{other}'"))),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let Some(command) = args.first() else {
        eprint!("{USAGE}");
        return ExitCode::from(2);
    };
    if command == "--help" || command == "-h" || command == "help" {
        print!("{USAGE}");
        return ExitCode::SUCCESS;
    }
    let flags = match Flags::parse(&args[1..]) {
        Ok(f) => f,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(command, &flags) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
