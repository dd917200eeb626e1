#include "fracwave/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace fracwave {

namespace {
std::string file_name_of(const std::string& path_base) {
    return std::filesystem::path(path_base).filename().string();
}
} // namespace

void save_field(const RealField& f, const std::string& path_base) {
    require_finite(f, "save_field");
    nlohmann::ordered_json header;
    header["dimension"] = f.grid.dim;
    header["points_per_axis"] = f.grid.points_per_axis;
    header["half_width"] = f.grid.half_width;
    header["order"] = "row-major";
    header["format"] = "csv";
    header["values"] = file_name_of(path_base) + ".csv";
    std::ofstream hdr(path_base + ".json");
    if (!hdr) throw ConfigError("save_field: cannot open " + path_base + ".json");
    hdr << header.dump(2) << "\n";

    std::ofstream out(path_base + ".csv");
    if (!out) throw ConfigError("save_field: cannot open " + path_base + ".csv");
    char buf[40];
    for (double v : f.values) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        out << buf;
    }
}

RealField load_field(const std::string& path_base) {
    std::ifstream hdr(path_base + ".json");
    if (!hdr) throw ConfigError("load_field: cannot open " + path_base + ".json");
    nlohmann::json header = nlohmann::json::parse(hdr);
    Grid grid = make_grid(header.at("dimension").get<int>(), header.at("points_per_axis").get<int>(),
                          header.at("half_width").get<double>());

    std::filesystem::path values_path =
        std::filesystem::path(path_base).parent_path() / header.at("values").get<std::string>();
    std::ifstream in(values_path);
    if (!in) throw ConfigError("load_field: cannot open " + values_path.string());
    RealField f{grid, {}};
    f.values.reserve(grid.size());
    double v;
    while (in >> v) f.values.push_back(v);
    if (f.values.size() != grid.size())
        throw ConfigError("load_field: value count does not match grid size");
    return f;
}

} // namespace fracwave
