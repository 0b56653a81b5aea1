//! The infinite presentation Sq: sampled termination, pumped critical branchings,
//! and the transfer of its Squier completion to the finite presentation.

use polygraphs::branchings::{enumerate_critical_branchings, resolve_branching, ResolutionOutcome};
use polygraphs::coherence::{parse_transfer_map, squier_completion, transfer_homotopy_basis};
use polygraphs::rewrite::{check_interpretation_certificate, parse_certificate, show_zigzag, Strategy};
use polygraphs::{ConvergentPolygraph, Limits, Polygraph, TerminationEvidence};

fn main() {
    let sq = Polygraph::parse(include_str!("../data/sq.pg")).unwrap();
    let limits = Limits::with_pump_bound(3);
    let cert = parse_certificate(&sq, include_str!("../data/sq.cert")).unwrap();
    let report = check_interpretation_certificate(&sq, &cert, 16, limits.pump_bound).unwrap();
    println!("certificate: {:?} after {} checks", report.verdict, report.checks);

    for b in enumerate_critical_branchings(&sq, limits.pump_bound).branchings {
        if let ResolutionOutcome::Confluent(r) = resolve_branching(&sq, &b, Strategy::Leftmost, limits) {
            println!("{} joins at {}", sq.show_word(&b.source), sq.show_word(&r.join));
        }
    }

    let cp = ConvergentPolygraph::certify(sq, &TerminationEvidence::Sampled { report, acknowledged: true }, limits).unwrap();
    let coh = squier_completion(&cp);
    let full = coh.polygraph();
    let tilde = Polygraph::parse(include_str!("../data/sq_tilde.pg")).unwrap();
    let data = parse_transfer_map(full, &tilde, include_str!("../data/sq_map.txt")).unwrap();
    let out = transfer_homotopy_basis(full, &tilde, &data, full.three_cells()).unwrap();
    for c in out.three_cells().iter().take(2) {
        println!("{}: {} steps === {} steps", c.name, c.source.len(), c.target.len());
        println!("  source {}", show_zigzag(&out, &c.source));
    }
}
