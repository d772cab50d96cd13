#pragma once

#include "pillow/catalog.hpp"
#include "pillow/certify.hpp"
#include "pillow/conjugacy.hpp"
#include "pillow/cover.hpp"
#include "pillow/document.hpp"
#include "pillow/double_cover.hpp"
#include "pillow/ellmod.hpp"
#include "pillow/error.hpp"
#include "pillow/group.hpp"
#include "pillow/matrix_group.hpp"
#include "pillow/parallel.hpp"
#include "pillow/perm.hpp"
#include "pillow/report.hpp"
#include "pillow/ribbon.hpp"
#include "pillow/search.hpp"
#include "pillow/svg.hpp"
#include "pillow/tiling.hpp"
#include "pillow/tower.hpp"
