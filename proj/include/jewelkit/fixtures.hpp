#ifndef JEWELKIT_FIXTURES_HPP
#define JEWELKIT_FIXTURES_HPP

#include <string>
#include <vector>

#include "jewelkit/io.hpp"

namespace jewelkit {

/// Built-in regression fixtures. Expected values carry their provenance in
/// the report: "caption" entries restate what the figure captions list,
/// "derived" entries were computed from the definitions and frozen.
struct FixtureReport {
    std::string name;
    bool pass = false;
    json report;
};

MultiGraph figure1_graph();
DecoratedGraph figure2_system();
DecoratedGraph figure3_system();

FixtureReport check_figure1();
FixtureReport check_figure2();
FixtureReport check_figure3();

std::vector<std::string> fixture_names();
FixtureReport run_fixture(const std::string& name);

}  // namespace jewelkit

#endif
