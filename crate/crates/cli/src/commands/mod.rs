mod catalog;
mod extension;
mod homology;
mod structure;

use crate::args::Command;
use crate::input::inputs_json;
use crate::report::{CliResult, Report};

pub fn run(command: &Command, r: &mut Report) -> CliResult<()> {
    use Command::*;
    match command {
        Check(i) => structure::check(i, r),
        Center(i) => structure::center(i, r),
        Commutator { input, ideals } => structure::commutator(input, ideals, r),
        Perfect(i) => structure::perfect(i, r),
        Ann(i) => structure::ann(i, r),
        LieQuotient { input, emit } => structure::lie_quotient(input, emit, r),
        Quotient { input, ideal, emit } => structure::quotient(input, &ideal.ideal, emit, r),
        Dnl { input, emit } => structure::dnl(input, emit, r),
        Twist { input, emit } => structure::twist(input, emit, r),
        Cond2(i) => structure::cond2(i, r),
        Hl0(i) => homology::hl0_cmd(i, r),
        Hl1(i) => homology::hl1_cmd(i, r),
        Hl { input, degree } => homology::hl_cmd(input, *degree, r),
        Tensor { input, ideal, slot, emit } => homology::tensor(input, ideal.as_deref(), *slot, emit, r),
        Psi { input, ideal, slot } => homology::psi(input, ideal.as_deref(), *slot, r),
        Phi(i) => homology::phi(i, r),
        Prop46 { input, ideal } => homology::prop46(input, &ideal.ideal, r),
        Uce { input, emit } => extension::uce_cmd(input, emit, r),
        Classify(i) => extension::classify(i, r),
        Beta(i) => extension::beta(i, r),
        Pullback { input, emit } => extension::pullback(input, emit, r),
        Compose(i) => extension::compose(i, r),
        Section(i) => extension::section(i, r),
        Unicentral(i) => extension::unicentral(i, r),
        Closed(i) => extension::closed(i, r),
        Thm58(i) => extension::thm58(i, r),
        Catalog { name, facts } => catalog::run(name.as_deref(), *facts, r),
    }
}

/// The report skeleton with the command's inputs filled in.
pub fn report_for(command: &Command) -> Report {
    use Command::*;
    let input = match command {
        Check(i) | Center(i) | Perfect(i) | Ann(i) | Cond2(i) | Hl0(i) | Hl1(i) | Phi(i) | Classify(i)
        | Beta(i) | Compose(i) | Section(i) | Unicentral(i) | Closed(i) | Thm58(i) => Some(i),
        Commutator { input, .. }
        | LieQuotient { input, .. }
        | Quotient { input, .. }
        | Dnl { input, .. }
        | Twist { input, .. }
        | Hl { input, .. }
        | Tensor { input, .. }
        | Psi { input, .. }
        | Prop46 { input, .. }
        | Uce { input, .. }
        | Pullback { input, .. } => Some(input),
        Catalog { .. } => None,
    };
    Report::new(command.name(), input.map(inputs_json).unwrap_or_default())
}
