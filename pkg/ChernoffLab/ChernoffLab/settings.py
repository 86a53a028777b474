"""
Django settings for the ChernoffLab project.

ChernoffLab has no web surface: Django provides the management-command CLI,
form validation for config files and the ORM for saved verification runs.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Load .env from project root (where manage.py lives). See .env.example for the DCL_* and PG_* keys.
load_dotenv(BASE_DIR / ".env")


SECRET_KEY = os.environ.get('DCL_SECRET_KEY', 'chernofflab-local-only-not-served')

DEBUG = os.environ.get('DCL_DEBUG', '0') == '1'

ALLOWED_HOSTS = []


# Application definition
INSTALLED_APPS = [
    'bodies',
    'inequalities',
]


# Database
# Saved runs go to PostgreSQL when PG_NAME is set, otherwise to a local SQLite file.

if os.environ.get('PG_NAME'):
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.postgresql',
            'NAME': os.environ.get('PG_NAME'),
            'USER': os.environ.get('PG_USER', 'postgres'),
            'PASSWORD': os.environ.get('PG_PASSWORD', ''),
            'HOST': os.environ.get('PG_HOST', 'localhost'),
            'PORT': os.environ.get('PG_PORT', '5432'),
        }
    }
else:
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.sqlite3',
            'NAME': BASE_DIR / 'db.sqlite3',
        }
    }


# Lab defaults. Library code takes these as explicit arguments; only the
# management commands read them from here.

def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value not in (None, '') else default


def _env_float(name, default):
    value = os.environ.get(name)
    return float(value) if value not in (None, '') else default


CHERNOFF_LAB = {
    'N_MAX': _env_int('DCL_N_MAX', 64),
    'TOLERANCE': _env_float('DCL_TOL', 1e-9),
    'SEED': _env_int('DCL_SEED', 0),
    'THREADS': max(1, _env_int('DCL_THREADS', os.cpu_count() or 1)),
    'OUTPUT_DIR': Path(os.environ.get('DCL_OUTPUT_DIR', BASE_DIR / 'artifacts')),
}


# Logging goes to stderr so command stdout stays machine-readable.

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'lab': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'lab',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': os.environ.get('DCL_LOG_LEVEL', 'WARNING'),
    },
}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Default primary key field type
# https://docs.djangoproject.com/en/5.2/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
