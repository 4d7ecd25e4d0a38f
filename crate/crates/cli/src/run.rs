use std::path::Path;

use anyhow::{bail, Context};
use pmu_core::cases;
use pmu_core::hbmo::{self, Execution};
use pmu_core::observability::{check_line_outage_robust, check_pmu_loss_robust, evaluate};
use pmu_core::oracle::{self, OracleOptions};
use pmu_core::{
    connectivity_matrix, parse_case, CaseFormat, ContingencySpec, HbmoParams, Network64, Placement,
    PmuLossMode, Regime,
};

use crate::args::{
    AlgoArg, CertifyArgs, Cli, Command, CommonArgs, FormatArg, PmuLossModeArg, RegimeArg,
    ReportFormat, SolveArgs, VerifyArgs,
};
use crate::config::{ParamsEcho, ParamsFile};
use crate::report::{CaseInfo, Check, OracleInfo, RegimeInfo, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    /// Feasible result or all checks passed.
    Success,
    /// Usage, I/O or parse error.
    Error,
    /// Infeasible result or a failed check.
    Infeasible,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::Error => 1,
            ExitStatus::Infeasible => 2,
        }
    }
}

/// Runs a parsed command line and returns its report without writing it.
pub fn run(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Solve(a) => run_solve(a),
        Command::Verify(a) => run_verify(a),
        Command::Certify(a) => run_certify(a),
    }
}

/// Runs a parsed command line, writing the report to its destination.
pub fn execute(cli: &Cli) -> anyhow::Result<ExitStatus> {
    let report = run(cli)?;
    let common = match &cli.command {
        Command::Solve(a) => &a.common,
        Command::Verify(a) => &a.common,
        Command::Certify(a) => &a.common,
    };
    let rendered = match common.report {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Text => report.to_text(),
    };
    match &common.out {
        Some(path) => std::fs::write(path, rendered)
            .with_context(|| format!("writing report to {}", path.display()))?,
        None => print!("{rendered}"),
    }
    Ok(if report.feasible {
        ExitStatus::Success
    } else {
        ExitStatus::Infeasible
    })
}

struct Loaded {
    net: Network64,
    info: CaseInfo,
    regime: Regime,
}

fn load(common: &CommonArgs) -> anyhow::Result<Loaded> {
    let path = Path::new(&common.case);
    let format = common.format.unwrap_or_else(|| {
        if path.extension().is_some_and(|e| e == "m") {
            FormatArg::Matpower
        } else {
            FormatArg::Native
        }
    });
    if common.detect_zib && format != FormatArg::Matpower {
        bail!("--detect-zib requires the matpower format");
    }
    let case_format = match format {
        FormatArg::Native => CaseFormat::Native,
        FormatArg::Matpower => CaseFormat::Matpower {
            detect_zib: common.detect_zib,
        },
    };
    let text = if path.is_file() {
        std::fs::read_to_string(path)
            .with_context(|| format!("reading case file {}", path.display()))?
    } else if let Some(builtin) = cases::builtin(&common.case) {
        builtin.text(case_format).to_string()
    } else {
        bail!("case file not found: {}", common.case);
    };
    let net: Network64 =
        parse_case(&text, case_format).with_context(|| format!("parsing case {}", common.case))?;

    let contingency = match common.regime {
        RegimeArg::Base => ContingencySpec::Base,
        RegimeArg::LineOutage => ContingencySpec::LineOutage,
        RegimeArg::PmuLoss => ContingencySpec::PmuLoss {
            mode: match common.pmu_loss_mode {
                PmuLossModeArg::RemovalSim => PmuLossMode::RemovalSim,
                PmuLossModeArg::CountThreshold => PmuLossMode::CountThreshold,
            },
            mob: common.mob,
        },
    };
    if common.mob == 0 {
        bail!("--mob must be at least 1");
    }
    let info = CaseInfo {
        source: common.case.clone(),
        format: match format {
            FormatArg::Native => "native".into(),
            FormatArg::Matpower => "matpower".into(),
        },
        buses: net.bus_count(),
        branches: net.branch_count(),
        zib: net.zib_one_based(),
    };
    Ok(Loaded {
        net,
        info,
        regime: Regime::new(contingency, common.zib),
    })
}

fn regime_info(regime: Regime) -> RegimeInfo {
    let (contingency, mode, mob) = match regime.contingency {
        ContingencySpec::Base => ("base", None, None),
        ContingencySpec::LineOutage => ("line-outage", None, None),
        ContingencySpec::PmuLoss { mode, mob } => ("pmu-loss", Some(mode.to_string()), Some(mob)),
    };
    RegimeInfo {
        contingency: contingency.into(),
        use_zib: regime.use_zib,
        pmu_loss_mode: mode,
        mob,
    }
}

/// Verifies `p` from scratch with the reference checks (not the solver's
/// evaluator) and fills in the placement part of a report.
fn assess(command: &str, loaded: &Loaded, p: &Placement) -> anyhow::Result<Report> {
    let net = &loaded.net;
    let regime = loaded.regime;
    let intact = evaluate(net, p, regime.use_zib, &connectivity_matrix(net))?;
    let mut checks = vec![Check {
        name: "observability".into(),
        passed: intact.fully_observable(),
        failing: intact.unobserved().map(|b| b + 1).collect(),
    }];
    match regime.contingency {
        ContingencySpec::Base => {}
        ContingencySpec::LineOutage => {
            let v = check_line_outage_robust(net, p, regime.use_zib)?;
            checks.push(Check {
                name: "line-outage".into(),
                passed: v.robust,
                failing: v.failing,
            });
        }
        ContingencySpec::PmuLoss { mode, mob } => {
            let v = check_pmu_loss_robust(net, p, regime.use_zib, mode, mob)?;
            checks.push(Check {
                name: "pmu-loss".into(),
                passed: v.robust,
                failing: v.failing,
            });
        }
    }
    Ok(Report {
        command: command.into(),
        case: loaded.info.clone(),
        regime: regime_info(regime),
        algorithm: None,
        placement: p.to_one_based(),
        cardinality: p.len(),
        total_cost: p.total_cost(net),
        feasible: checks.iter().all(|c| c.passed),
        direct_counts: intact.direct_counts().to_vec(),
        redundancy_index: intact.redundancy_index(),
        checks,
        history: None,
        seed: None,
        params: None,
        oracle: None,
        evaluations: None,
        wall_time_ms: 0.0,
    })
}

fn millis(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

pub fn run_solve(args: &SolveArgs) -> anyhow::Result<Report> {
    let started = std::time::Instant::now();
    let loaded = load(&args.common)?;
    let net = &loaded.net;
    let mut report = match args.algo {
        AlgoArg::Hbmo => {
            let mut params = HbmoParams::default();
            if let Some(path) = &args.params {
                params = ParamsFile::load(path)?.apply(params);
            }
            if let Some(seed) = args.seed {
                params.seed = seed;
            }
            let penalty = params.validate(net)?;
            let execution = if args.parallel {
                Execution::Parallel
            } else {
                Execution::Serial
            };
            let result = hbmo::solve_with(net, loaded.regime, &params, execution)?;
            let mut report = assess("solve", &loaded, &result.best)?;
            debug_assert_eq!(report.feasible, result.feasible);
            report.history = Some(result.history);
            report.seed = Some(params.seed);
            report.params = Some(ParamsEcho::new(&params, penalty));
            report.evaluations = Some(result.evaluations);
            report
        }
        AlgoArg::Greedy => assess("solve", &loaded, &oracle::greedy_cover(net, loaded.regime)?)?,
        AlgoArg::Exhaustive => {
            let options = OracleOptions {
                size_cap: None,
                budget: args.budget,
            };
            let r = oracle::exhaustive_min(net, loaded.regime, options)?;
            let mut report = assess("solve", &loaded, &r.witness)?;
            report.oracle = Some(OracleInfo {
                optima: r.optima,
                examined: r.examined,
                greedy_cardinality: None,
            });
            report
        }
    };
    report.algorithm = Some(
        match args.algo {
            AlgoArg::Hbmo => "hbmo",
            AlgoArg::Greedy => "greedy",
            AlgoArg::Exhaustive => "exhaustive",
        }
        .into(),
    );
    report.wall_time_ms = millis(started.elapsed());
    Ok(report)
}

fn parse_placement(list: &str) -> anyhow::Result<Vec<usize>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .with_context(|| format!("invalid bus number `{s}` in placement"))
        })
        .collect()
}

pub fn run_verify(args: &VerifyArgs) -> anyhow::Result<Report> {
    let started = std::time::Instant::now();
    let loaded = load(&args.common)?;
    let buses = parse_placement(&args.placement)?;
    let p = Placement::from_one_based(loaded.net.bus_count(), &buses)?;
    let mut report = assess("verify", &loaded, &p)?;
    report.wall_time_ms = millis(started.elapsed());
    Ok(report)
}

pub fn run_certify(args: &CertifyArgs) -> anyhow::Result<Report> {
    let started = std::time::Instant::now();
    let loaded = load(&args.common)?;
    let options = OracleOptions {
        size_cap: args.size_cap,
        budget: args.budget,
    };
    let exact = oracle::exhaustive_min(&loaded.net, loaded.regime, options)?;
    let greedy = oracle::greedy_cover(&loaded.net, loaded.regime)?;
    let mut report = assess("certify", &loaded, &exact.witness)?;
    report.checks.push(Check {
        name: "exact<=greedy".into(),
        passed: exact.cardinality <= greedy.len(),
        failing: Vec::new(),
    });
    report.feasible = report.checks.iter().all(|c| c.passed);
    report.algorithm = Some("exhaustive".into());
    report.oracle = Some(OracleInfo {
        optima: exact.optima,
        examined: exact.examined,
        greedy_cardinality: Some(greedy.len()),
    });
    report.wall_time_ms = millis(started.elapsed());
    Ok(report)
}
