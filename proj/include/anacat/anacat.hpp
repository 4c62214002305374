#pragma once

#include "anacat/ambient.hpp"
#include "anacat/ana.hpp"
#include "anacat/corpus.hpp"
#include "anacat/crossed_module.hpp"
#include "anacat/fingrp.hpp"
#include "anacat/fingset.hpp"
#include "anacat/finset.hpp"
#include "anacat/group.hpp"
#include "anacat/internal.hpp"
#include "anacat/io.hpp"
#include "anacat/laws.hpp"
#include "anacat/report.hpp"
#include "anacat/sites.hpp"
