//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use matcrystal::cli::suites::{seed_from_env, Suite};
use matcrystal::doublecrystal::{decompose, normal_form, normal_matrix};
use matcrystal::growth::{burge_backward, burge_forward_traced, GrowthDiagram, Orientation, ShapeDatum};
use matcrystal::matrices::{diagon, diagram, BinaryMatrix, Entry, IntegralMatrix, Matrix};
use matcrystal::shapes::{part, Partition};

fn bits(rows: &[&str]) -> BinaryMatrix {
    BinaryMatrix::from_values(&rows.iter().map(|r| r.bytes().map(|b| (b - b'0') as usize).collect()).collect::<Vec<_>>())
}

fn ints(rows: &[&[usize]]) -> IntegralMatrix {
    IntegralMatrix::from_values(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn running_binary() -> BinaryMatrix {
    bits(&["010010000", "111000000", "101001000", "010100000", "001110100", "100010011", "011111110"])
}

fn running_integral() -> IntegralMatrix {
    ints(&[&[1, 0, 1, 0, 1, 2, 0], &[1, 1, 0, 1, 1, 0, 3], &[0, 2, 1, 0, 1, 1, 0], &[0, 0, 1, 1, 1, 0, 2], &[0, 0, 0, 0, 0, 1, 2]])
}

fn running_shape() -> Partition {
    part(&[8, 8, 5, 3, 1])
}

type Outcome = Result<(), String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn within(limit: Duration, start: Instant) -> Outcome {
    let took = start.elapsed();
    if took <= limit {
        Ok(())
    } else {
        Err(format!("took {:.2}s, limit {:.0}s", took.as_secs_f64(), limit.as_secs_f64()))
    }
}

fn golden_binary() -> Outcome {
    let start = Instant::now();
    let m = running_binary();
    let (p, q) = decompose(&m);
    expect("P", p, bits(&["111011111", "111111110", "111110000", "010110000", "001000000"]))?;
    expect("Q", q, bits(&["110000000", "111000000", "110100000", "101000000", "001111000", "100010110", "011111110"]))?;
    expect("shape", normal_form(&m), running_shape())?;
    expect("N", normal_matrix(&m), diagram(&running_shape()))?;
    within(Duration::from_secs(1), start)
}

fn golden_integral() -> Outcome {
    let start = Instant::now();
    let m = running_integral();
    let (p, q) = decompose(&m);
    expect(
        "P",
        p,
        ints(&[&[2, 1, 1, 0, 2, 2, 0], &[0, 2, 0, 1, 1, 1, 3], &[0, 0, 2, 0, 1, 0, 2], &[0, 0, 0, 1, 0, 0, 2], &[0, 0, 0, 0, 0, 1, 0]]),
    )?;
    expect(
        "Q",
        q,
        ints(&[&[5, 0, 0, 0, 0, 0, 0], &[2, 5, 0, 0, 0, 0, 0], &[1, 2, 2, 0, 0, 0, 0], &[0, 1, 2, 2, 0, 0, 0], &[0, 0, 1, 1, 1, 0, 0]]),
    )?;
    expect("shape", normal_form(&m), running_shape())?;
    expect("N", normal_matrix(&m), diagon(&running_shape()))?;
    within(Duration::from_secs(1), start)
}

fn burge_datum() -> Outcome {
    let (kappa, trace) =
        burge_forward_traced(&part(&[8, 4, 2]), &part(&[8, 7, 2]), &part(&[8, 5, 3, 1]), 2).map_err(|e| e.to_string())?;
    expect("forward", kappa, part(&[8, 8, 4, 2]))?;
    let steps: Vec<_> = trace.iter().map(|s| (s.index, s.d, s.part, s.carry)).collect();
    expect("trace", steps, vec![(3, 3, 2, 1), (2, 4, 4, 0), (1, 8, 8, 0)])?;
    let back = burge_backward(&part(&[11, 9, 8]), &part(&[10, 9, 8, 2]), &part(&[13, 9, 9, 5])).map_err(|e| e.to_string())?;
    expect("backward", back, (part(&[9, 9, 6]), 3))
}

fn binary_data() -> Outcome {
    let row = ShapeDatum::RowInsertion.forward(&part(&[5, 3, 2]), &part(&[6, 3, 3, 1, 1]), &part(&[6, 3, 2, 2]), 1);
    expect("row insertion", row.map_err(|e| e.to_string())?, part(&[7, 4, 3, 2, 1, 1]))?;
    let col = ShapeDatum::ColumnInsertion.forward(&part(&[3, 2, 1]), &part(&[4, 2, 2, 1]), &part(&[5, 2, 2]), 0);
    expect("column insertion", col.map_err(|e| e.to_string())?, part(&[6, 3, 2, 1]))
}

fn rsk_datum() -> Outcome {
    let k = ShapeDatum::Rsk.forward(&part(&[5, 5, 2, 1]), &part(&[8, 5, 5, 2]), &part(&[8, 5, 3, 1, 1]), 0);
    expect("rsk", k.map_err(|e| e.to_string())?, running_shape())
}

fn grid(rows: &[&str]) -> Vec<Vec<Partition>> {
    rows.iter().map(|r| r.split('|').map(|p| p.parse().expect("literal partition")).collect()).collect()
}

fn diagram_matches<T: Entry>(name: &str, m: &Matrix<T>, o: Orientation, expected: &[&str]) -> Outcome
where
    Matrix<T>: matcrystal::doublecrystal::CrystalMatrix,
{
    let g = GrowthDiagram::compute(m, o);
    expect(name, g.grid().to_vec(), grid(expected))?;
    g.verify().map_err(|e| format!("{name}: {e:?}"))
}

fn growth_diagrams() -> Outcome {
    let start = Instant::now();
    diagram_matches(
        "Diagram 1",
        &running_integral(),
        Orientation::NorthWest,
        &[
            "0|0|0|0|0|0|0|0",
            "0|1|1|2|2|3|5|5",
            "0|2|2,1|3,1|3,2|5,2|7,2|7,5",
            "0|2|3,2|4,2,1|4,3,1|6,3,2|8,4,2|8,7,2",
            "0|2|3,2|4,2,2|4,3,2,1|6,4,3,1|8,5,3,1|8,8,4,2",
            "0|2|3,2|4,2,2|4,3,2,1|6,4,3,1|8,5,3,1,1|8,8,5,3,1",
        ],
    )?;
    diagram_matches(
        "Diagram 2",
        &running_binary(),
        Orientation::NorthWest,
        &[
            "0|0|0|0|0|0|0|0|0|0",
            "0|0|1|1|1|2|2|2|2|2",
            "0|1|2,1|3,1|3,1|3,2|3,2|3,2|3,2|3,2",
            "0|1,1|2,1,1|3,2,1|3,2,1|3,2,2|4,2,2|4,2,2|4,2,2|4,2,2",
            "0|1,1|2,2,1|3,2,2|4,2,2|4,2,2,1|4,3,2,1|4,3,2,1|4,3,2,1|4,3,2,1",
            "0|1,1|2,2,1|3,3,2|4,4,2|5,4,2,1|5,4,3,1|6,4,3,1|6,4,3,1|6,4,3,1",
            "0|1,1,1|2,2,1,1|3,3,2,1|4,4,2,1|5,5,2,1,1|5,5,3,1,1|6,5,3,1,1|7,5,3,1,1|8,5,3,1,1",
            "0|1,1,1|2,2,2,1|3,3,3,2|4,4,4,2|5,5,5,2,1|6,5,5,3,1|7,6,5,3,1|8,7,5,3,1|8,8,5,3,1",
        ],
    )?;
    diagram_matches(
        "Diagram 3",
        &running_binary(),
        Orientation::NorthEast,
        &[
            "0|0|0|0|0|0|0|0|0|0",
            "2|2|1|1|1|0|0|0|0|0",
            "3,2|2,2|1,1|1|1|0|0|0|0|0",
            "4,2,2|3,2,1|2,1,1|2|2|1|0|0|0|0",
            "4,3,2,1|3,3,1,1|2,2,1|2,1|2|1|0|0|0|0",
            "6,4,3,1|5,3,3,1|4,2,2,1|3,2,1|3,1|2|1|0|0|0",
            "8,5,3,1,1|7,4,3,1|6,3,2,1|5,2,2|5,1,1|4|3|2|1|0",
            "8,8,5,3,1|7,7,4,3,1|6,6,3,2,1|5,5,2,2|5,4,1,1|4,3|3,2|2,1|1|0",
        ],
    )?;
    diagram_matches(
        "Diagram 4",
        &running_integral(),
        Orientation::SouthWest,
        &[
            "0|2|3,2|4,2,2|4,3,2,1|6,4,3,1|8,5,3,1,1|8,8,5,3,1",
            "0|1|3,1|3,2,1|4,2,2|5,4,2|5,5,2,1|8,5,5,2",
            "0|0|2|3,1|3,2|4,3|5,3,1|5,5,3",
            "0|0|0|1|2|3|3,1|5,3",
            "0|0|0|0|0|0|1|3",
            "0|0|0|0|0|0|0|0",
        ],
    )?;
    within(Duration::from_secs(10), start)
}

fn suite(s: Suite, limit: Option<Duration>) -> Outcome {
    let start = Instant::now();
    let report = s.run(seed_from_env());
    if !report.passed() {
        return Err(report.to_string());
    }
    match limit {
        Some(l) => within(l, start),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let minutes = |m: u64| Some(Duration::from_secs(60 * m));
    let criteria: Vec<Criterion> = vec![
        ("golden binary decomposition", Box::new(golden_binary)),
        ("golden integral decomposition", Box::new(golden_integral)),
        ("Burge shape datum", Box::new(burge_datum)),
        ("binary shape data", Box::new(binary_data)),
        ("RSK shape datum", Box::new(rsk_datum)),
        ("growth diagrams", Box::new(growth_diagrams)),
        ("commutation of vertical and horizontal moves", Box::new(|| suite(Suite::Commutation, minutes(1)))),
        ("potentials count moves", Box::new(|| suite(Suite::Potentials, None))),
        ("decompose/compose round trip", Box::new(|| suite(Suite::RoundTrip, None))),
        ("insertion oracles agree", Box::new(|| suite(Suite::Oracles, minutes(5)))),
        ("alternating sums", Box::new(|| suite(Suite::Sums, minutes(10)))),
        ("cancellation involutions", Box::new(|| suite(Suite::Involutions, None))),
        ("Schutzenberger duals", Box::new(|| suite(Suite::Duals, None))),
        ("pictures", Box::new(|| suite(Suite::Pictures, None))),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.2}s)", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
