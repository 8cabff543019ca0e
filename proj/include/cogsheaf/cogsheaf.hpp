#pragma once

// Umbrella header: exact linear algebra over Q and F_p, finite groups by
// Cayley table, scwols and their trees, complexes of groups, their
// categories, matrix sheaves, and the developability certificate engine.

#include "cogsheaf/errors.hpp"
#include "cogsheaf/report.hpp"
#include "cogsheaf/field.hpp"
#include "cogsheaf/matrix.hpp"
#include "cogsheaf/group.hpp"
#include "cogsheaf/group_catalog.hpp"
#include "cogsheaf/scwol.hpp"
#include "cogsheaf/complex_of_groups.hpp"
#include "cogsheaf/bh_category.hpp"
#include "cogsheaf/sheaf.hpp"
#include "cogsheaf/develop.hpp"
#include "cogsheaf/io.hpp"
