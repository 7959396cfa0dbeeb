#include "rotstar/io.hpp"
#include "rotstar/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace rotstar::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_grid_dump(const std::string& path, const gravity::DensityField& rho,
                     const gravity::PotentialField& U) {
    const gravity::AxisymGrid& g = rho.grid;
    if (!(U.grid == g))
        throw InvalidParams("write_grid_dump: density and potential grids differ");
    std::ofstream out(path);
    if (!out)
        throw Error("write_grid_dump: cannot open " + path);
    out << "# " << g.nr << ' ' << g.nz << ' ' << format_double(g.dr()) << ' '
        << format_double(g.dz()) << '\n';
    for (int k = 0; k < g.nodes_z(); ++k)
        for (int i = 0; i < g.nodes_r(); ++i)
            out << format_double(g.r(i)) << ' ' << format_double(g.z(k)) << ' '
                << format_double(rho.at(i, k)) << ' ' << format_double(U.at(i, k)) << '\n';
    if (!out)
        throw Error("write_grid_dump: write failed for " + path);
}

GridDump read_grid_dump(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("read_grid_dump: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.size() < 2 || line[0] != '#')
        throw Error("read_grid_dump: missing header in " + path);
    std::istringstream hdr(line.substr(1));
    int nr, nz;
    double dr, dz;
    if (!(hdr >> nr >> nz >> dr >> dz))
        throw Error("read_grid_dump: malformed header in " + path);
    const auto grid = gravity::AxisymGrid::make(nr, nz, nr * dr, nz * dz);
    GridDump dump{gravity::DensityField{gravity::GridField::zeros(grid)},
                  gravity::PotentialField{gravity::GridField::zeros(grid)}};
    for (int k = 0; k < grid.nodes_z(); ++k)
        for (int i = 0; i < grid.nodes_r(); ++i) {
            double r, z, rho, u;
            if (!(in >> r >> z >> rho >> u))
                throw Error("read_grid_dump: truncated node data in " + path);
            dump.rho.at(i, k) = rho;
            dump.U.at(i, k) = u;
        }
    return dump;
}

void write_family_csv(const std::string& path,
                      const std::vector<continuation::FamilyRecord>& records,
                      const continuation::Termination* termination) {
    std::ofstream out(path);
    if (!out)
        throw Error("write_family_csv: cannot open " + path);
    out << "kappa,alpha,max_rho,support_r,support_z,norm_s,f1_sup,f2_mass,scf_iters\n";
    for (const auto& r : records)
        out << format_double(r.kappa) << ',' << format_double(r.alpha) << ','
            << format_double(r.max_rho) << ',' << format_double(r.support_r) << ','
            << format_double(r.support_z) << ',' << format_double(r.norm_s) << ','
            << format_double(r.f1_sup) << ',' << format_double(r.f2_mass) << ','
            << r.scf_iters << '\n';
    if (termination)
        out << "# termination=" << continuation::to_string(termination->kind) << '\n';
    if (!out)
        throw Error("write_family_csv: write failed for " + path);
}

void write_profile_csv(const std::string& path, const std::vector<double>& xi,
                       const std::vector<double>& u, const std::vector<double>& rho) {
    if (xi.size() != u.size() || xi.size() != rho.size())
        throw InvalidParams("write_profile_csv: column lengths differ");
    std::ofstream out(path);
    if (!out)
        throw Error("write_profile_csv: cannot open " + path);
    out << "xi,u,rho\n";
    for (std::size_t i = 0; i < xi.size(); ++i)
        out << format_double(xi[i]) << ',' << format_double(u[i]) << ','
            << format_double(rho[i]) << '\n';
    if (!out)
        throw Error("write_profile_csv: write failed for " + path);
}

std::vector<std::pair<double, double>> read_rotation_table(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("read_rotation_table: cannot open " + path);
    std::vector<std::pair<double, double>> table;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream row(line);
        double s, w2;
        if (row >> s >> w2)
            table.emplace_back(s, w2);
    }
    return table;
}

} // namespace rotstar::io
