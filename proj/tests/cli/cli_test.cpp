// Integration checks for the qpgas binary: schema, exit codes, sweep
// reproducibility, config handling. The binary path arrives as argv[1].

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
    std::printf("%s %s\n", ok ? "ok  " : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& cmd) {
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') quoted = !quoted;
        else if (c == sep && !quoted) {
            out.push_back(cur);
            cur.clear();
        } else cur += c;
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) out.push_back(line);
    return out;
}

// value column of the (first) data row
double value_of(const std::string& csv) {
    const auto rows = lines_of(csv);
    if (rows.size() < 2) return NAN;
    const auto cells = split(rows[1], ',');
    return cells.size() >= 10 ? std::atof(cells[8].c_str()) : NAN;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_tests <path-to-qpgas>\n");
        return 2;
    }
    const std::string bin = argv[1];

    // header shape and the 2.612 reference value through the real CLI
    {
        const auto r = run(bin + " tb --dim 3 --density 2.612 --classical --units reduced");
        check(r.exit_code == 0, "tb exit code 0");
        const auto rows = lines_of(r.output);
        check(!rows.empty() && rows[0] == "q,p,phi,tau,domain,dim,T,mu,value,verdict",
              "csv header matches the fixed schema");
        const double tb = value_of(r.output);
        check(std::abs(tb - 6.28318530717958647692) < 1e-3 * 6.2832, "tb value close to 2 pi");
    }

    // g2 chaotic-light anchor
    {
        const auto r = run(bin + " g2 --q 1 --p 1 --xi 0.7");
        check(r.exit_code == 0 && std::abs(value_of(r.output) - 2.0) < 1e-12,
              "g2 classical returns 2");
    }

    // exit codes: usage = 1, domain/convergence = 2
    check(run(bin + " bogus-subcommand 2>/dev/null").exit_code == 1, "unknown subcommand -> 1");
    check(run(bin + " g2 --xi 1 2>/dev/null").exit_code == 1, "missing parameters -> 1");
    check(run(bin + " bose-factor --eta 0.5 --q 3 --p 1 2>/dev/null").exit_code == 2,
          "nonconvergent mode -> 2");
    check(run(bin + " bose-factor --eta 1 --q 0.5 --p 0.5 2>/dev/null").exit_code == 2,
          "diagonal q = p -> 2");
    {
        const auto r = run(bin + " bose-factor --eta 0.5 --q 3 --p 1 2>&1 >/dev/null");
        check(r.output.find("\"error\"") != std::string::npos,
              "structured error record on stderr");
    }

    // sweep rows reproduce single-point invocations
    {
        const auto sweep = run(bin + " g2 --q 0.9 --p 0.7 --sweep xi=1:3:5");
        const auto rows = lines_of(sweep.output);
        check(rows.size() == 6, "sweep emits 5 rows");
        bool all_match = rows.size() == 6;
        for (int i = 0; i < 5 && all_match; ++i) {
            const double xi = 1.0 + 0.5 * i;
            char flag[64];
            std::snprintf(flag, sizeof(flag), " g2 --q 0.9 --p 0.7 --xi %.17g", xi);
            const auto single = run(bin + flag);
            const auto single_rows = lines_of(single.output);
            all_match = single_rows.size() == 2 && rows[i + 1] == single_rows[1];
        }
        check(all_match, "each sweep row equals the single-point record");
    }

    // the other two parameter spellings
    {
        const auto r = run(bin + " g2 --q-re 0.2 --q-im 0.3 --xi 2");
        check(r.exit_code == 0 && value_of(r.output) == value_of(r.output)
                  && r.output.find("ComplexConjugate") != std::string::npos,
              "complex parameters via --q-re/--q-im");
        const auto r2 = run(bin + " g2 --phi 1.0 --tau 1.5707963267948966 --family complex"
                                  " --xi 2");
        check(r2.exit_code == 0 && r2.output.find("UnitCircle") != std::string::npos,
              "parameters via --phi/--tau/--family");
    }

    // SI units: constants are user inputs and the mass/degeneracy flags are
    // mandatory
    {
        check(run(bin + " tb --dim 3 --density 1 --classical --units si 2>/dev/null").exit_code
                  == 1,
              "si units without --mass/--degeneracy -> 1");
        const auto reduced = run(bin + " tb --dim 3 --density 1 --classical");
        const auto si_unit = run(bin
                                 + " tb --dim 3 --density 1 --classical --units si"
                                   " --mass 1 --degeneracy 1 --hbar 1 --kb 1");
        check(reduced.exit_code == 0 && si_unit.exit_code == 0
                  && std::abs(value_of(reduced.output) - value_of(si_unit.output)) < 1e-15,
              "si units with unit constants match reduced");
        // T_B scales as hbar^2 (from N0 ~ hbar^-D and the 2/D exponent)
        const auto si_h2 = run(bin
                               + " tb --dim 3 --density 1 --classical --units si"
                                 " --mass 1 --degeneracy 1 --hbar 2 --kb 1");
        check(std::abs(value_of(si_h2.output) / value_of(reduced.output) - 4.0) < 1e-12,
              "T_B scales as hbar^2 at D = 3");
    }

    // bose-factor through the temperature route: eta = (E - mu)/(k_B T)
    {
        const auto r = run(bin + " bose-factor --T 2 --mu -1 --energy 0 --classical");
        check(r.exit_code == 0 && std::abs(value_of(r.output) - 1.0 / std::expm1(0.5)) < 1e-12,
              "bose-factor --T/--mu/--energy route");
    }

    // thermo quantities run and satisfy the state equation through the CLI
    {
        const std::string pt = " --dim 3 --T 1.3 --mu -0.4 --q 0.5 --p 0.25 --volume 2";
        const double e = value_of(run(bin + " thermo --quantity energy" + pt).output);
        const double p = value_of(run(bin + " thermo --quantity pressure" + pt).output);
        const double omega = value_of(run(bin + " thermo --quantity omega" + pt).output);
        check(std::abs(p * 2.0 - 2.0 / 3.0 * e) < 1e-14 * std::abs(e),
              "thermo pressure obeys pV = (2/D)E");
        check(std::abs(omega + 2.0 / 3.0 * e) < 1e-14 * std::abs(e),
              "thermo omega obeys Omega = -(2/D)E");
        const auto cv = run(bin + " thermo --quantity cv" + pt);
        check(cv.exit_code == 0 && value_of(cv.output) > 0.0, "thermo cv positive");
        // solve mu back from the density this state produces
        const double rho = value_of(run(bin + " thermo --quantity density" + pt).output);
        char q[64];
        std::snprintf(q, sizeof(q), "%.17g", rho);
        const auto mu = run(bin + " thermo --quantity mu --density " + std::string(q) + pt);
        check(mu.exit_code == 0 && std::abs(value_of(mu.output) + 0.4) < 1e-8,
              "thermo quantity=mu inverts the density");
    }

    // phase-map rows reproduce single-point tb records
    {
        const auto pm = run(bin + " phase-map --dim 3 --density 1.1 --sweep q=0.25:0.75:3"
                                  " --p 0.5");
        const auto rows = lines_of(pm.output);
        check(rows.size() == 4, "phase-map emits one row per grid point");
        bool match = rows.size() == 4;
        const char* qs[3] = {"0.25", "0.5", "0.75"};
        for (int i = 0; i < 3 && match; ++i) {
            if (i == 1) continue; // q = p = 0.5 is the rejected diagonal
            const auto tb = run(bin + " tb --dim 3 --density 1.1 --q " + std::string(qs[i])
                                + " --p 0.5");
            const auto tb_rows = lines_of(tb.output);
            match = tb_rows.size() == 2 && rows[i + 1] == tb_rows[1];
        }
        check(match, "phase-map rows equal single-point tb records");
        check(rows.size() == 4 && rows[2].find("error:") != std::string::npos,
              "diagonal grid point recorded in-row");
    }

    // sweeps over (phi, tau) work too
    {
        const auto r = run(bin + " tb --dim 3 --density 1 --family complex"
                                 " --tau 1.5707963267948966 --sweep phi=0.4:2.4:5");
        const auto rows = lines_of(r.output);
        bool all_conditional = rows.size() == 6;
        for (std::size_t i = 1; i < rows.size() && all_conditional; ++i)
            all_conditional = rows[i].find("Conditional") != std::string::npos;
        check(all_conditional, "phi sweep over the unit circle yields Conditional rows");
    }

    // json output shape
    {
        const auto r = run(bin + " sigma --s 1.5 --classical --format json");
        check(r.exit_code == 0 && r.output.rfind("[", 0) == 0
                  && r.output.find("\"value\":2.6123753486854877") != std::string::npos
                  && r.output.find("\"verdict\":\"ConvergedAbsolute\"") != std::string::npos,
              "json format carries value and verdict");
    }

    // divergent sigma is a verdict, not an error
    {
        const auto r = run(bin + " sigma --s 1.5 --q 0.8 --p 1.25");
        check(r.exit_code == 0 && r.output.find("Divergent") != std::string::npos,
              "divergent sigma reports a verdict with exit 0");
    }

    // config file supplies defaults; explicit flags win
    {
        std::ofstream cfg("/tmp/qpgas_test.cfg");
        cfg << "# defaults for the run\n"
            << "format = json\n"
            << "tol = 1e-8\n";
        cfg.close();
        const auto r = run(bin + " sigma --s 2 --classical --config /tmp/qpgas_test.cfg");
        check(r.exit_code == 0 && r.output.rfind("[", 0) == 0, "config file sets the format");
        const auto r2 = run(bin
                            + " sigma --s 2 --classical --config /tmp/qpgas_test.cfg"
                              " --format csv");
        check(r2.exit_code == 0 && r2.output.rfind("q,p,", 0) == 0, "explicit flag beats config");
    }

    // --out writes the same bytes as stdout
    {
        const auto direct = run(bin + " tb --dim 3 --density 1 --q 0.5 --p 0.25");
        run(bin + " tb --dim 3 --density 1 --q 0.5 --p 0.25 --out /tmp/qpgas_out.csv");
        std::ifstream f("/tmp/qpgas_out.csv", std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        check(ss.str() == direct.output, "--out file matches stdout bytes");
    }

    std::printf("cli_tests: %s\n", g_failures == 0 ? "all passed" : "FAILURES");
    return g_failures == 0 ? 0 : 1;
}
