//! Rebuild a slice of both verification tables and print them as JSON and
//! as an aligned text table.

use stieltjes_wigert::harness::{render_rows, OutputFormat};
use stieltjes_wigert::prelude::*;

pub fn run_example() -> Result<()> {
    let mut t1 = RunConfig::table1_defaults();
    t1.u_list = vec!["1,1".parse()?];
    t1.t_list = vec!["0".parse()?, "1.0".parse()?];
    t1.paper_style = true;
    t1.digits = 3;
    let rows = reproduce_table1(&t1)?;
    print!("{}", render_rows(&rows, OutputFormat::Json)?);

    let mut t2 = RunConfig::table2_defaults();
    t2.x_list = vec!["10".parse()?];
    let rows = reproduce_table2(&t2)?;
    print!("{}", render_rows(&rows, OutputFormat::Text)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
