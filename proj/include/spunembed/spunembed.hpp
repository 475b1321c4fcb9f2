#pragma once

#include "spunembed/acceptance.hpp"
#include "spunembed/algebra.hpp"
#include "spunembed/contactcheck.hpp"
#include "spunembed/embedder.hpp"
#include "spunembed/errors.hpp"
#include "spunembed/handle5.hpp"
#include "spunembed/int128.hpp"
#include "spunembed/lefschetz.hpp"
#include "spunembed/manifest.hpp"
#include "spunembed/mcg.hpp"
#include "spunembed/obstruct.hpp"
#include "spunembed/openbook.hpp"
#include "spunembed/report.hpp"
#include "spunembed/spin.hpp"
#include "spunembed/surface.hpp"
