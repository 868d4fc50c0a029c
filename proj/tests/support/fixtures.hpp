#pragma once

#include "uhelp/ontology/hierarchy.hpp"

#include <filesystem>
#include <string>

#ifndef UHELP_FIXTURE_SOURCE_DIR
#error "UHELP_FIXTURE_SOURCE_DIR must point at the repository's fixtures/ directory"
#endif

namespace test_support {

inline std::filesystem::path fixture(const std::string& name)
{
    return std::filesystem::path(UHELP_FIXTURE_SOURCE_DIR) / name;
}

inline uhelp::ontology::Hierarchy children_taxonomy()
{
    return uhelp::ontology::load_hierarchy_file(fixture("children_taxonomy.json"));
}

inline uhelp::ontology::Hierarchy care_meronomy()
{
    return uhelp::ontology::load_hierarchy_file(fixture("care_meronomy.json"));
}

} // namespace test_support
