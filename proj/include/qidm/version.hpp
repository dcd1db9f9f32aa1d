#pragma once

#define QIDM_VERSION "0.1.0"
